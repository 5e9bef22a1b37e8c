from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Config(BaseSettings):
    # graph limits
    graph_max_vertices: int = 12
    """the largest graph accepted from a file or produced by enumeration"""
    canonical_max_vertices: int = 8
    """canonical_form and automorphism_count refuse larger graphs"""

    # enumeration limits, per class
    enum_max_digraph: int = 4
    """largest n for enumerate_class over all digraphs"""
    enum_max_acyclic: int = 5
    """largest n for enumerate_class over digraphs with acyclic loop-free part"""
    enum_max_poset: int = 6
    """largest n for enumerate_class over posets and strict posets"""
    enum_max_ugraph: int = 5
    """largest n for enumerating undirected graphs"""

    # homomorphism / ev limits
    hom_max_source: int = 8
    """largest source graph enumerate_homs will backtrack over"""
    ev_max_vertices: int = 1_000_000
    """overflow guard on the number of ev-vertices of a single system"""
    search_node_budget: int = 5_000_000
    """number of partial assignments the epsilon search may visit before giving up"""

    # defaults for the cli and scans
    default_n_max: int = 4
    """default scan bound for certify, verify and reproduce"""
    default_class: Literal["all", "ta", "poset", "strict_poset", "ugraph", "co"] = (
        "poset"
    )
    """the class used when `--class` is not given"""
    random_seed: int = 20240
    """seed for sampled rearrangement specs and epsilon maps"""

    model_config = SettingsConfigDict(env_file=".env")


CONFIG = Config()
