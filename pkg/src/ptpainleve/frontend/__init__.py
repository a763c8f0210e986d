"""PDE definition language and the command-line interface built on it."""

from .models import BUILTINS, builtin, configure, load_model
from .report import Report
from .report import parse as parse_report
from .report import serialize as serialize_report
from .parser import format_node, format_syntax, parse_expression, parse_syntax, tokenize
from .system import PDESystem, check_evolution_form, parse_system

__all__ = [
    "BUILTINS", "PDESystem", "Report", "builtin", "check_evolution_form", "configure", "format_node", "format_syntax",
    "load_model", "parse_expression", "parse_report", "parse_syntax", "parse_system",
    "serialize_report", "tokenize",
]
