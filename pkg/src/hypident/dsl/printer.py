"""Canonical text for documents and expressions; ``parse(render(d)) == d``."""

from __future__ import annotations

from fractions import Fraction

from hypident.dsl.ast import Abs, BinOp, Document, Hyp, Name, Neg, Num, Poch, QProdInf, Sum, Vwp

# precedence levels: sum 1, product 2, unary 3, power base 4, atom 5
_LEVEL = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _number(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    den, k = v.denominator, 0
    while den % 10 == 0 or den % 2 == 0 or den % 5 == 0:
        if den % 10 == 0:
            den //= 10
        elif den % 2 == 0:
            den //= 2
        else:
            den //= 5
        k += 1
    if den == 1 and v > 0:
        # terminating decimal: print it exactly
        scaled = v.numerator * 10 ** k // v.denominator
        digits = str(scaled).rjust(k + 1, "0")
        return f"{digits[:-k]}.{digits[-k:]}".rstrip("0").rstrip(".") if k else digits
    return f"({v.numerator}/{v.denominator})"


def _level(node) -> int:
    if isinstance(node, BinOp):
        return _LEVEL[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Num) and (node.value < 0):
        return 3
    return 5


def _wrap(node, minimum: int) -> str:
    text = render_expr(node)
    return f"({text})" if _level(node) < minimum else text


def _list(nodes) -> str:
    return ", ".join(render_expr(n) for n in nodes)


def render_expr(node) -> str:
    if isinstance(node, Num):
        return _number(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, BinOp):
        if node.op in "+-":
            return f"{_wrap(node.left, 1)} {node.op} {_wrap(node.right, 2)}"
        if node.op in "*/":
            return f"{_wrap(node.left, 2)}{'*' if node.op == '*' else '/'}{_wrap(node.right, 3)}"
        return f"{_wrap(node.left, 5)}^{_wrap(node.right, 3)}"
    if isinstance(node, Poch):
        fn = "qpoch" if node.q_analogue else "pochhammer"
        return f"{fn}({render_expr(node.base)}, {render_expr(node.index)})"
    if isinstance(node, QProdInf):
        return f"qprodinf({render_expr(node.arg)})"
    if isinstance(node, Abs):
        return f"abs({render_expr(node.arg)})"
    if isinstance(node, Sum):
        hi = "auto" if node.upper is None else render_expr(node.upper)
        return f"sum({node.index}, {render_expr(node.lower)}, {hi}, {render_expr(node.body)})"
    if isinstance(node, Hyp):
        fn = "qhyp" if node.q_analogue else "hyp"
        return f"{fn}({_list(node.upper)}; {_list(node.lower)}; {render_expr(node.arg)})"
    if isinstance(node, Vwp):
        return f"vwp8phi7({render_expr(node.a)}; {_list(node.lateral)}; {render_expr(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def render(doc: Document) -> str:
    lines = []
    for p in doc.params:
        line = f"param {p.name}"
        if p.value is not None:
            line += f" = {render_expr(p.value)}"
        if p.where:
            preds = " and ".join(f"{render_expr(w.left)} {w.op} {render_expr(w.right)}" for w in p.where)
            line += f" where {preds}"
        lines.append(line)
    for v in doc.variables:
        lines.append(f"var {v.name}" + (f" = {render_expr(v.value)}" if v.value is not None else ""))
    if doc.mode is not None:
        lines.append(f"mode {doc.mode.kind} {_number(doc.mode.value)}")
    lines.append(" == ".join(render_expr(s) for s in doc.sides))
    return "\n".join(lines) + "\n"
