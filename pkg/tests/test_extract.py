import numpy as np
import pytest

from msextract.errors import EmptyProjectError
from msextract.extract import scan_sources
from msextract.extract.java import clean_comment, scan_comments


def counts_by_name(facts):
    names = [n.rsplit(".", 1)[-1] for n in facts.names]
    return {(names[i], names[j]): int(c) for (i, j), c in np.ndenumerate(facts.call_graph.counts) if c}


def test_field_typed_receiver_counts_each_site(java_tree):
    root = java_tree({
        "p/A.java": "package p; public class A { private B b; void m() { b.f(); b.f(); } }",
        "p/B.java": "package p; public class B { void f() {} }",
    })
    facts = scan_sources(root)
    assert facts.names == ("p.A", "p.B")
    assert facts.call_graph.counts.tolist() == [[0, 2], [0, 0]]


def test_single_class_no_calls(java_tree):
    root = java_tree({"Solo.java": "public class Solo { int x; void idle() { x = 1; } }"})
    facts = scan_sources(root)
    assert facts.call_graph.counts.tolist() == [[0]]


def test_ambiguous_unqualified_call_is_dropped(java_tree):
    root = java_tree({
        "A.java": "public class A { void m(int x) { log(x); } }",
        "B.java": "public class B { void log(int v) {} }",
        "C.java": "public class C { void log(int v) {} }",
    })
    facts = scan_sources(root)
    assert facts.call_graph.counts.sum() == 0


def test_unique_name_rule_attributes_unresolved_receiver(java_tree):
    root = java_tree({
        "A.java": "public class A { void m() { helper().audit(); } Object helper() { return null; } }",
        "B.java": "public class B { void audit() {} }",
    })
    c = counts_by_name(scan_sources(root))
    assert c == {("A", "A"): 1, ("A", "B"): 1}


def test_resolution_kinds(java_tree):
    root = java_tree({
        "s/Svc.java": """package s;
            import r.Repo;
            public class Svc extends Base {
                private Repo repo;
                Svc() { super(); }
                void run(Repo other, String text) {
                    Repo local = new Repo();   // constructor: 1
                    local.save();              // local var: 1
                    other.save();              // parameter: 1
                    this.repo.save();          // this.field: 1
                    Repo.create();             // static: 1
                    text.trim();               // external receiver: dropped
                    Math.max(1, 2);            // external class: dropped
                    inherited();               // found in project superclass Base
                    super.inherited();         // explicit super call
                }
            }""",
        "s/Base.java": "package s; public class Base { void inherited() {} }",
        "r/Repo.java": "package r; public class Repo { void save() {} static Repo create() { return null; } void trim() {} }",
    })
    c = counts_by_name(scan_sources(root))
    assert c[("Svc", "Repo")] == 5
    assert c[("Svc", "Base")] == 3  # super(), inherited(), super.inherited()
    assert sum(v for (a, _), v in c.items() if a == "Svc") == 8


def test_nested_and_anonymous_types_fold_into_top_level(java_tree):
    root = java_tree({
        "Outer.java": """public class Outer {
            private Target t;
            static class Inner { Target t2; void go() { t2.hit(); } }
            void m() { new Runnable() { public void run() { t.hit(); } }; }
        }""",
        "Target.java": "public class Target { void hit() {} }",
    })
    facts = scan_sources(root)
    assert facts.names == ("Outer", "Target")
    assert counts_by_name(facts) == {("Outer", "Target"): 2}
    assert "Inner" in facts.classes[0].identifiers


def test_identifiers_and_comments_collected(java_tree):
    root = java_tree({
        "Cart.java": """package shop;
            /** Shopping cart. */
            public class Cart {
                // running total
                private int totalPrice;
                void addItem(String itemName) { int lineCount = 0; }
            }
            /* trailing note */
            enum Size { SMALL, LARGE }
        """,
    })
    facts = scan_sources(root)
    cart, size = facts.classes
    assert cart.qualified_name == "shop.Cart"
    assert list(cart.identifiers) == ["Cart", "totalPrice", "addItem", "itemName", "lineCount"]
    assert list(cart.comments) == ["Shopping cart.", "running total"]
    assert list(size.comments) == ["trailing note"]
    assert set(size.identifiers) == {"Size", "SMALL", "LARGE"}


def test_unparseable_file_is_skipped_with_warning(java_tree):
    root = java_tree({
        "Good.java": "public class Good { void f() {} }",
        "Bad.java": "public class Bad { void f( { }",
    })
    facts = scan_sources(root)
    assert facts.names == ("Good",)
    assert len(facts.warnings) == 1 and "Bad.java" in facts.warnings[0]


def test_empty_tree_raises(tmp_path):
    with pytest.raises(EmptyProjectError, match="no classes found"):
        scan_sources(tmp_path)


def test_missing_root_is_io_error(tmp_path):
    with pytest.raises(FileNotFoundError):
        scan_sources(tmp_path / "nope")


def test_unknown_profile(tmp_path):
    with pytest.raises(ValueError, match="profile"):
        scan_sources(tmp_path, profile="cobol")


def test_duplicate_qualified_names_are_merged(java_tree):
    root = java_tree({
        "svc1/Visit.java": "package dto; public class Visit { int id; }",
        "svc2/Visit.java": "package dto; public class Visit { int date; }",
    })
    facts = scan_sources(root)
    assert facts.names == ("dto.Visit",)
    assert set(facts.classes[0].identifiers) == {"Visit", "id", "date"}
    assert any("merged" in w for w in facts.warnings)


def test_scan_is_deterministic_and_sorted(planted):
    pm, _ = planted
    a, b = scan_sources(pm.root), scan_sources(pm.root)
    assert a == b
    assert list(a.names) == sorted(a.names)
    assert [c.id for c in a.classes] == list(range(a.n))


def test_calls_in_matches_column_sums(planted_facts):
    counts = planted_facts.call_graph.counts
    for i in range(planted_facts.n):
        expected = sum(counts[j, i] for j in range(planted_facts.n) if j != i)
        assert planted_facts.call_graph.calls_in()[i] == expected


def test_scan_comments_ignores_comment_markers_in_strings():
    code, comments = scan_comments('String s = "// not a comment"; /* real */ char c = \'{\';')
    assert [clean_comment(t) for _, _, t in comments] == ["real"]
    assert "{" not in code


def test_clean_comment_strips_javadoc_stars():
    assert clean_comment("*\n * Places an order.\n * @param id the id\n ") == "Places an order. @param id the id"
