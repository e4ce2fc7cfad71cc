from .factsfile import FACTS_SCHEMA, dumps_facts, facts_from_dict, facts_to_dict, load_facts, save_facts
from .java import scan_sources
from .model import CallGraph, ClassRecord, ProjectFacts, build_facts

__all__ = [
    "CallGraph",
    "ClassRecord",
    "FACTS_SCHEMA",
    "ProjectFacts",
    "build_facts",
    "dumps_facts",
    "facts_from_dict",
    "facts_to_dict",
    "load_facts",
    "save_facts",
    "scan_sources",
]
