"""Static extraction for Java-style sources.

Builds one record per top-level type (class, interface, enum, annotation).
Nested and anonymous types fold into their enclosing top-level type, both as
callers and as declarers of methods.

Call sites are resolved in this order:

1. the declared type of the receiver, when it is a local, parameter or field
   (``x.f()``, ``this.x.f()``), a class name (``Util.f()``) or a fresh
   instance (``new Foo().f()``);
2. for unqualified calls, the caller itself, then its project supertypes;
3. otherwise the name alone, when exactly one project type declares a
   method of that name.

Sites that resolve to a non-project type, or stay ambiguous, are dropped.
Constructor invocations count as calls to the constructed type; field
accesses and method references are not calls.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

import javalang
from javalang import tree as jt

from ..errors import EmptyProjectError
from .model import ProjectFacts, build_facts

log = logging.getLogger(__name__)

PROFILES = ("java-like",)
SOURCE_SUFFIXES = {"java-like": (".java",)}

# receiver state markers; a class id (int) means "resolved to that project type"
EXTERNAL = "external"
UNKNOWN = None

_TYPE_DECLS = (jt.ClassDeclaration, jt.InterfaceDeclaration, jt.EnumDeclaration, jt.AnnotationDeclaration)


def scan_comments(source: str) -> Tuple[str, List[Tuple[int, int, str]]]:
    """Split Java source into blanked code and comments.

    Returns the source with every comment and string/char literal replaced by
    spaces (newlines kept, so offsets line up), plus ``(start, end, text)``
    for each comment.
    """
    out = list(source)
    comments = []
    i, n = 0, len(source)

    def blank(a, b):
        for k in range(a, b):
            if out[k] != "\n":
                out[k] = " "

    while i < n:
        ch = source[i]
        nxt = source[i + 1] if i + 1 < n else ""
        if ch == "/" and nxt == "/":
            end = source.find("\n", i)
            end = n if end < 0 else end
            comments.append((i, end, source[i + 2:end]))
            blank(i, end)
            i = end
        elif ch == "/" and nxt == "*":
            end = source.find("*/", i + 2)
            end = n if end < 0 else end + 2
            comments.append((i, end, source[i + 2:max(i + 2, end - 2)]))
            blank(i, end)
            i = end
        elif source.startswith('"""', i):
            end = source.find('"""', i + 3)
            end = n if end < 0 else end + 3
            blank(i + 1, end - 1)
            i = end
        elif ch in "\"'":
            k = i + 1
            while k < n and source[k] != ch and source[k] != "\n":
                k += 2 if source[k] == "\\" else 1
            end = min(k + 1, n)
            blank(i + 1, max(i + 1, end - 1))
            i = end
        else:
            i += 1
    return "".join(out), comments


def clean_comment(text: str) -> str:
    lines = []
    for line in text.splitlines():
        line = line.strip()
        while line.startswith("*"):
            line = line[1:]
        lines.append(line.strip())
    return " ".join(part for part in lines if part)


def _line_starts(source: str) -> List[int]:
    starts = [0]
    for k, ch in enumerate(source):
        if ch == "\n":
            starts.append(k + 1)
    return starts


def _extent(code: str, start: int) -> Tuple[int, int]:
    """Character span of a type declaration, found by brace matching on blanked code."""
    open_at = code.find("{", start)
    if open_at < 0:
        return start, len(code)
    depth = 0
    for k in range(open_at, len(code)):
        if code[k] == "{":
            depth += 1
        elif code[k] == "}":
            depth -= 1
            if depth == 0:
                return start, k + 1
    return start, len(code)


def _type_name(ref) -> Optional[str]:
    if ref is None:
        return None
    parts = []
    while ref is not None:
        parts.append(ref.name)
        ref = getattr(ref, "sub_type", None)
    return ".".join(parts)


def _members(decl) -> list:
    body = decl.body
    if isinstance(decl, jt.EnumDeclaration):
        return list(body.constants or []) + list(body.declarations or [])
    return list(body or [])


@dataclass
class _TypeInfo:
    name: str
    qualified: str
    path: str
    package: str
    imports: List[str]
    nodes: List[object]
    nested_names: List[str]
    methods: Set[str]
    supers: List[str]
    fields: Dict[str, object] = field(default_factory=dict)
    identifiers: List[str] = field(default_factory=list)
    comments: List[str] = field(default_factory=list)


def _collect_declared(decl, methods: Set[str], nested: List[str]) -> None:
    for member in _members(decl):
        if isinstance(member, jt.MethodDeclaration):
            methods.add(member.name)
        elif isinstance(member, _TYPE_DECLS):
            nested.append(member.name)
            _collect_declared(member, methods, nested)


def _supers(decl) -> List[str]:
    refs = []
    ext = getattr(decl, "extends", None)
    if isinstance(ext, list):
        refs.extend(ext)
    elif ext is not None:
        refs.append(ext)
    refs.extend(getattr(decl, "implements", None) or [])
    return [_type_name(r) for r in refs]


def _identifiers(decl) -> List[str]:
    names = []
    for _, node in decl:
        if isinstance(node, _TYPE_DECLS) or isinstance(node, jt.MethodDeclaration):
            names.append(node.name)
        elif isinstance(node, (jt.FormalParameter, jt.InferredFormalParameter, jt.CatchClauseParameter)):
            names.append(node.name)
        elif isinstance(node, (jt.FieldDeclaration, jt.VariableDeclaration)):
            names.extend(d.name for d in node.declarators)
        elif isinstance(node, jt.EnumConstantDeclaration):
            names.append(node.name)
    return names


def _fields(decl) -> Dict[str, object]:
    table: Dict[str, object] = {}
    for member in _members(decl):
        if isinstance(member, jt.FieldDeclaration):
            for d in member.declarators:
                table[d.name] = member.type
    # fields of nested types come second so the outer declaration wins
    for _, node in decl.filter(jt.FieldDeclaration):
        for d in node.declarators:
            table.setdefault(d.name, node.type)
    return table


def _parse_file(path: Path, rel: str) -> List[_TypeInfo]:
    source = path.read_bytes().decode("utf-8", errors="replace")
    unit = javalang.parse.parse(source)
    package = unit.package.name if unit.package else ""
    imports = [imp.path for imp in unit.imports if not imp.static and not imp.wildcard]
    code, comments = scan_comments(source)
    starts = _line_starts(source)

    infos, spans = [], []
    for decl in unit.types:
        line, col = decl.position if decl.position else (1, 1)
        offset = starts[min(line, len(starts)) - 1] + max(col - 1, 0)
        spans.append(_extent(code, offset))
        methods, nested = set(), []
        _collect_declared(decl, methods, nested)
        infos.append(
            _TypeInfo(
                name=decl.name,
                qualified=f"{package}.{decl.name}" if package else decl.name,
                path=rel,
                package=package,
                imports=imports,
                nodes=[decl],
                nested_names=nested,
                methods=methods,
                supers=_supers(decl),
                fields=_fields(decl),
                identifiers=_identifiers(decl),
            )
        )

    # a comment inside a type's braces belongs to it; one outside belongs to
    # the next type (javadoc, annotations), or the last type if none follows
    for start, _, text in comments:
        text = clean_comment(text)
        if not text or not infos:
            continue
        owner = None
        for k, (a, b) in enumerate(spans):
            if a <= start < b:
                owner = k
                break
        if owner is None:
            following = [k for k, (a, _) in enumerate(spans) if a > start]
            owner = following[0] if following else len(infos) - 1
        infos[owner].comments.append(text)
    return infos


class _Resolver:
    def __init__(self, infos: List[_TypeInfo], index: Dict[str, int]):
        self.infos = infos
        self.index = index
        self.simple: Dict[str, Set[int]] = defaultdict(set)
        self.declarers: Dict[str, Set[int]] = defaultdict(set)
        for info in infos:
            cid = index[info.qualified]
            self.simple[info.name].add(cid)
            for nested in info.nested_names:
                self.simple[nested].add(cid)
            for m in info.methods:
                self.declarers[m].add(cid)
        self.super_ids = {index[i.qualified]: [s for s in (self.resolve_type(n, i) for n in i.supers) if isinstance(s, int)] for i in infos}

    def resolve_type(self, name: Optional[str], ctx: _TypeInfo):
        """Map a type name seen in ``ctx`` to a class id, EXTERNAL or UNKNOWN."""
        if not name or name == "var":
            return UNKNOWN
        if name in self.index:
            return self.index[name]
        parts = name.split(".")
        if len(parts) > 1:
            # Outer.Inner or pkg.Outer.Inner
            for cut in range(len(parts) - 1, 0, -1):
                prefix = ".".join(parts[:cut])
                if prefix in self.index:
                    return self.index[prefix]
            head = self.resolve_type(parts[0], ctx)
            return head if isinstance(head, int) else EXTERNAL
        candidates = self.simple.get(name, set())
        for imp in ctx.imports:
            if imp.rsplit(".", 1)[-1] == name:
                if imp in self.index:
                    return self.index[imp]
                outer = imp.rsplit(".", 1)[0]
                if outer in self.index and name in self.infos[self.index[outer]].nested_names:
                    return self.index[outer]
                return EXTERNAL
        if not candidates:
            return EXTERNAL
        if len(candidates) == 1:
            return next(iter(candidates))
        own = self.index[ctx.qualified]
        if own in candidates:
            return own
        same_pkg = [c for c in candidates if self.infos[c].package == ctx.package]
        if len(same_pkg) == 1:
            return same_pkg[0]
        return UNKNOWN

    def state_of(self, type_node, ctx: _TypeInfo):
        if type_node is None:
            return UNKNOWN
        if isinstance(type_node, jt.BasicType) or getattr(type_node, "dimensions", None):
            return EXTERNAL
        return self.resolve_type(_type_name(type_node), ctx)

    def by_name(self, member: str):
        declarers = self.declarers.get(member, ())
        return next(iter(declarers)) if len(declarers) == 1 else None

    def in_hierarchy(self, start: int, member: str, include_self: bool = True) -> Optional[int]:
        queue = [start] if include_self else list(self.super_ids[start])
        seen = set()
        while queue:
            cid = queue.pop(0)
            if cid in seen:
                continue
            seen.add(cid)
            if member in self.infos[cid].methods:
                return cid
            queue.extend(self.super_ids[cid])
        return None


def _unit_locals(unit, resolver: _Resolver, ctx: _TypeInfo) -> Dict[str, object]:
    table: Dict[str, object] = {}
    for _, node in unit:
        if isinstance(node, (jt.FormalParameter,)):
            table[node.name] = resolver.state_of(node.type, ctx)
        elif isinstance(node, jt.InferredFormalParameter):
            table[node.name] = UNKNOWN
        elif isinstance(node, jt.CatchClauseParameter):
            table[node.name] = EXTERNAL
        elif isinstance(node, jt.VariableDeclaration):
            for d in node.declarators:
                table[d.name] = resolver.state_of(node.type, ctx)
    return table


def _resolve_calls(info: _TypeInfo, resolver: _Resolver, tally: Dict[Tuple[int, int], int]) -> None:
    own = resolver.index[info.qualified]
    field_states = {name: resolver.state_of(t, info) for name, t in info.fields.items()}

    def add(target):
        if isinstance(target, int):
            tally[(own, target)] += 1

    def on_receiver(state, member):
        if state is EXTERNAL:
            return None
        if state is UNKNOWN:
            return resolver.by_name(member)
        return state

    def qualifier_state(q: str, local: Dict[str, object]):
        parts = q.split(".")
        head = parts[0]
        if len(parts) == 1:
            if head in local:
                return local[head]
            if head in field_states:
                return field_states[head]
            kind = resolver.resolve_type(head, info)
            if isinstance(kind, int):
                return kind
            return EXTERNAL if head[:1].isupper() else UNKNOWN
        if q in resolver.index:
            return resolver.index[q]
        if head in local or head in field_states:
            return UNKNOWN
        kind = resolver.resolve_type(q, info)
        if isinstance(kind, int):
            # a static member of a project type, e.g. Config.INSTANCE.get()
            return kind if q.split(".")[-1][:1].isupper() else UNKNOWN
        return EXTERNAL

    units = [unit for decl in info.nodes for unit in _members(decl)]
    for unit in units:
        local = _unit_locals(unit, resolver, info)
        handled = set()
        for _, node in unit:
            selectors = getattr(node, "selectors", None)
            if selectors:
                if isinstance(node, jt.This):
                    state = own
                elif isinstance(node, jt.ClassCreator):
                    state = resolver.state_of(node.type, info)
                else:
                    state = UNKNOWN
                this_chain = isinstance(node, jt.This)
                for sel in selectors:
                    if isinstance(sel, jt.MemberReference):
                        state = field_states.get(sel.member, UNKNOWN) if this_chain else UNKNOWN
                    elif isinstance(sel, jt.MethodInvocation):
                        handled.add(id(sel))
                        add(on_receiver(state, sel.member))
                        state = UNKNOWN
                    else:
                        state = UNKNOWN
                    this_chain = False

            if isinstance(node, jt.SuperMethodInvocation):
                add(resolver.in_hierarchy(own, node.member, include_self=False))
            elif isinstance(node, jt.MethodInvocation):
                if id(node) in handled:
                    continue
                if node.qualifier:
                    add(on_receiver(qualifier_state(node.qualifier, local), node.member))
                elif node.qualifier == "":
                    target = resolver.in_hierarchy(own, node.member)
                    add(target if target is not None else resolver.by_name(node.member))
                else:
                    add(resolver.by_name(node.member))
            elif isinstance(node, jt.ClassCreator):
                add(resolver.state_of(node.type, info))
            elif isinstance(node, jt.ExplicitConstructorInvocation):
                add(own)
            elif isinstance(node, jt.SuperConstructorInvocation):
                supers = resolver.super_ids.get(own) or []
                if supers:
                    add(supers[0])


def scan_sources(root, profile: str = "java-like") -> ProjectFacts:
    """Parse every source file under ``root`` into class-level facts.

    Unparseable files are logged, recorded in ``facts.warnings`` and skipped.
    Raises ``EmptyProjectError`` when no type declaration is found.
    """
    if profile not in PROFILES:
        raise ValueError(f"unsupported language profile {profile!r}; choose from {PROFILES}")
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"source root {root} is not a readable directory")

    warnings: List[str] = []
    infos: List[_TypeInfo] = []
    files = sorted(p for p in root.rglob("*") if p.is_file() and p.suffix in SOURCE_SUFFIXES[profile])
    for path in files:
        rel = path.relative_to(root).as_posix()
        try:
            infos.extend(_parse_file(path, rel))
        except (javalang.parser.JavaSyntaxError, javalang.tokenizer.LexerError, IndexError, TypeError, StopIteration) as exc:
            msg = f"skipped {rel}: cannot parse ({type(exc).__name__}: {exc})"
            log.warning(msg)
            warnings.append(msg)
        except OSError as exc:
            msg = f"skipped {rel}: {exc}"
            log.warning(msg)
            warnings.append(msg)

    if not infos:
        raise EmptyProjectError(f"no classes found under {root}")

    # same qualified name in several files (e.g. copies merged from several
    # services): fold into the first occurrence
    merged: Dict[str, _TypeInfo] = {}
    for info in infos:
        first = merged.get(info.qualified)
        if first is None:
            merged[info.qualified] = info
            continue
        msg = f"duplicate type {info.qualified} in {info.path} merged into {first.path}"
        log.warning(msg)
        warnings.append(msg)
        first.methods |= info.methods
        first.nested_names.extend(info.nested_names)
        first.identifiers.extend(info.identifiers)
        first.comments.extend(info.comments)
        first.supers.extend(info.supers)
        first.nodes.extend(info.nodes)
        for k, v in info.fields.items():
            first.fields.setdefault(k, v)

    ordered = [merged[q] for q in sorted(merged)]
    index = {info.qualified: k for k, info in enumerate(ordered)}
    resolver = _Resolver(ordered, index)
    tally: Dict[Tuple[int, int], int] = defaultdict(int)
    for info in ordered:
        _resolve_calls(info, resolver, tally)

    records = [
        {"name": i.qualified, "path": i.path, "identifiers": i.identifiers, "comments": i.comments}
        for i in ordered
    ]
    names = [i.qualified for i in ordered]
    calls = [(names[a], names[b], c) for (a, b), c in sorted(tally.items())]
    return build_facts(records, calls, warnings=warnings)
