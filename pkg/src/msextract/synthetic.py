"""Synthetic Java monolith with known (planted) service boundaries.

Each service is six classes (entity, repository, validator, mapper, service,
controller) that call each other densely and share a domain vocabulary.
Service facades call one method of the next service in a ring, and a few
shared utility classes (logging, text, clock) are called from every service
but share no domain words with any of them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence

DOMAINS: Dict[str, List[str]] = {
    "order": ["order", "cart", "checkout", "basket", "quantity", "shipping", "address", "purchase"],
    "payment": ["payment", "invoice", "charge", "card", "refund", "amount", "currency", "billing"],
    "inventory": ["stock", "warehouse", "product", "sku", "supplier", "restock", "shelf", "reserve"],
    "account": ["account", "profile", "member", "password", "email", "login", "session", "avatar"],
}

UTILITIES = ("Logger", "TextUtil", "Clock")


def _cap(word: str) -> str:
    return word[:1].upper() + word[1:]


@dataclass(frozen=True)
class PlantedMonolith:
    root: Path
    services: Dict[str, List[str]]

    def truth(self) -> dict:
        return {"services": {k: sorted(v) for k, v in sorted(self.services.items())}}

    def write_truth(self, path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.truth(), indent=2) + "\n", encoding="utf-8")
        return path


def _service_sources(pkg: str, words: Sequence[str], next_facade: str, next_pkg: str) -> Dict[str, str]:
    w = list(words)
    N = _cap(w[0])
    W = [_cap(x) for x in w]
    entity, repo, validator, mapper, service, controller = (
        N, f"{N}Repository", f"{N}Validator", f"{N}Mapper", f"{N}Service", f"{N}Controller"
    )
    header = f"package {pkg};\n\nimport java.util.*;\nimport util.*;\n"
    src = {}

    src[entity] = header + f"""
/** The {w[0]} entity with its {w[1]}, {w[2]} and {w[3]} details. */
public class {entity} {{
    private long {w[0]}Id;
    private String {w[1]}Name;
    private int {w[4]};
    private String {w[5]}Code;
    private String {w[6]}Label;

    public long get{W[0]}Id() {{ return {w[0]}Id; }}
    public String get{W[1]}Name() {{ return {w[1]}Name; }}
    public int get{W[4]}() {{ return {w[4]}; }}
    public String get{W[5]}Code() {{ return {w[5]}Code; }}
    public void set{W[4]}(int {w[4]}Value) {{ this.{w[4]} = {w[4]}Value; }}
}}
"""
    src[repo] = header + f"""
/** Stores {w[0]} records and looks them up by {w[0]} id or {w[1]}. */
public class {repo} {{
    private Map<Long, {entity}> {w[0]}Store = new HashMap<>();

    public void save{N}({entity} {w[0]}) {{
        {w[0]}Store.put({w[0]}.get{W[0]}Id(), {w[0]});
    }}

    public {entity} find{N}(long {w[0]}Id) {{
        return {w[0]}Store.get({w[0]}Id);
    }}

    public List<{entity}> find{W[1]}{W[6]}(String {w[1]}Name) {{
        List<{entity}> {w[6]}Matches = new ArrayList<>();
        for ({entity} {w[0]} : {w[0]}Store.values()) {{
            if ({w[0]}.get{W[1]}Name().equals({w[1]}Name)) {{ {w[6]}Matches.add({w[0]}); }}
        }}
        return {w[6]}Matches;
    }}
}}
"""
    src[validator] = header + f"""
/** Checks that a {w[0]} has a valid {w[4]} and {w[5]} before it is saved. */
public class {validator} {{
    public boolean check{W[4]}({entity} {w[0]}) {{
        return {w[0]}.get{W[4]}() > 0;
    }}

    public boolean check{W[5]}({entity} {w[0]}) {{
        String {w[5]}Code = {w[0]}.get{W[5]}Code();
        return {w[5]}Code != null && check{W[4]}({w[0]});
    }}
}}
"""
    src[mapper] = header + f"""
/** Maps raw {w[0]} {w[7]} requests to {w[0]} entities. */
public class {mapper} {{
    public {entity} to{N}(String {w[7]}Request, int {w[4]}) {{
        {entity} {w[0]} = new {entity}();
        {w[0]}.set{W[4]}({w[4]});
        return {w[0]};
    }}

    public String to{W[7]}Summary({entity} {w[0]}) {{
        return {w[0]}.get{W[1]}Name() + {w[0]}.get{W[5]}Code();
    }}
}}
"""
    src[service] = header + f"""
import {next_pkg}.{next_facade};

/** Coordinates the {w[0]} {w[7]} workflow: validation, {w[1]} mapping and storage. */
public class {service} {{
    private {repo} {w[0]}Repository = new {repo}();
    private {validator} {w[0]}Validator = new {validator}();
    private {mapper} {w[0]}Mapper = new {mapper}();
    private {next_facade} partner;

    public {entity} place{N}(String {w[7]}Request, int {w[4]}) {{
        {entity} {w[0]} = {w[0]}Mapper.to{N}({w[7]}Request, {w[4]});
        if (!{w[0]}Validator.check{W[5]}({w[0]})) {{
            Logger.log("rejected " + {w[0]}Mapper.to{W[7]}Summary({w[0]}));
            return null;
        }}
        {w[0]}Repository.save{N}({w[0]});
        return {w[0]};
    }}

    public {entity} update{W[4]}(long {w[0]}Id, int {w[4]}) {{
        {entity} {w[0]} = {w[0]}Repository.find{N}({w[0]}Id);
        {w[0]}.set{W[4]}({w[4]});
        {w[0]}Validator.check{W[4]}({w[0]});
        {w[0]}Repository.save{N}({w[0]});
        return {w[0]};
    }}

    public void hand{W[7]}Over(String {w[7]}Request) {{
        partner.ping(TextUtil.normalize({w[7]}Request));
    }}

    public void ping(String {w[2]}Note) {{
        Clock.now();
    }}
}}
"""
    src[controller] = header + f"""
/** HTTP endpoints for {w[0]} {w[2]} and {w[3]} requests. */
public class {controller} {{
    private {service} {w[0]}Service = new {service}();

    public {entity} post{N}(String {w[7]}Request, int {w[4]}) {{
        return {w[0]}Service.place{N}({w[7]}Request, {w[4]});
    }}

    public {entity} put{W[4]}(long {w[0]}Id, int {w[4]}) {{
        {w[0]}Service.update{W[4]}({w[0]}Id, {w[4]});
        return {w[0]}Service.update{W[4]}({w[0]}Id, {w[4]});
    }}
}}
"""
    return src


_UTILITY_SOURCES = {
    "Logger": """package util;

/** Writes diagnostic messages with a severity level to standard error. */
public class Logger {
    private static int verbosityLevel = 1;

    public static void log(String message) {
        if (verbosityLevel > 0) { System.err.println(message); }
    }

    public static void warn(String message) {
        log("WARN " + message);
    }
}
""",
    "TextUtil": """package util;

/** Whitespace trimming and lowercase normalisation for free text. */
public class TextUtil {
    public static String normalize(String text) {
        String trimmed = text.trim();
        return trimmed.toLowerCase();
    }

    public static String padRight(String text, int width) {
        return String.format("%-" + width + "s", text);
    }
}
""",
    "Clock": """package util;

/** Wall clock access in epoch milliseconds so timing can be stubbed. */
public class Clock {
    private static long frozenMillis = -1;

    public static long now() {
        return frozenMillis >= 0 ? frozenMillis : System.currentTimeMillis();
    }

    public static void freezeAt(long epochMillis) {
        frozenMillis = epochMillis;
    }
}
""",
}


def planted_monolith(root, n_services: int = 3, utilities: bool = True) -> PlantedMonolith:
    """Write a planted monolith under ``root`` and return its layout.

    With ``utilities`` the three shared utility classes are added; the truth
    file then groups them as a ``common`` service.
    """
    if not 1 <= n_services <= len(DOMAINS):
        raise ValueError(f"n_services must be in 1..{len(DOMAINS)}")
    root = Path(root)
    names = list(DOMAINS)[:n_services]
    services: Dict[str, List[str]] = {}
    for k, name in enumerate(names):
        nxt = names[(k + 1) % n_services]
        facade = _cap(DOMAINS[nxt][0]) + "Service"
        sources = _service_sources(name, DOMAINS[name], facade, nxt)
        folder = root / name
        folder.mkdir(parents=True, exist_ok=True)
        for cls, text in sources.items():
            (folder / f"{cls}.java").write_text(text, encoding="utf-8")
        services[name] = [f"{name}.{cls}" for cls in sources]

    if utilities:
        folder = root / "util"
        folder.mkdir(parents=True, exist_ok=True)
        for cls, text in _UTILITY_SOURCES.items():
            (folder / f"{cls}.java").write_text(text, encoding="utf-8")
        services["common"] = [f"util.{cls}" for cls in UTILITIES]
    return PlantedMonolith(root, services)
