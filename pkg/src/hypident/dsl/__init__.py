"""A small language for writing series comparisons outside the registry."""

from hypident.dsl.ast import Document
from hypident.dsl.evaluator import evaluate
from hypident.dsl.parser import parse, tokenize
from hypident.dsl.printer import render, render_expr

__all__ = ["Document", "evaluate", "parse", "render", "render_expr", "tokenize"]
