from .forest import AccessTrace, ForestTree, SlpHeavyForest, Visit, access, build_heavy_forest
from .grammar import MAX_LENGTH, Alphabet, Nonterminal, Rule, Slp, Terminal, validate
from .slp_file import SlpFile

__all__ = [
    "MAX_LENGTH",
    "AccessTrace",
    "Alphabet",
    "ForestTree",
    "Nonterminal",
    "Rule",
    "Slp",
    "SlpFile",
    "SlpHeavyForest",
    "Terminal",
    "Visit",
    "access",
    "build_heavy_forest",
    "validate",
]
