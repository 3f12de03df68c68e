"""Compile expression ASTs into flat stack programs for the kernels.

A program is a sequence of (opcode, arg) int32 pairs plus a float64 constant
pool. Both kernel backends execute the same encoding, one value per grid
point, so a compiled program is the unit of work shared between them.
"""

from __future__ import annotations

import numpy as np

from .. import expr as ex

OP_PUSH_CONST = 0
OP_PUSH_S = 1
OP_NEG = 2
OP_ADD = 3
OP_SUB = 4
OP_MUL = 5
OP_DIV = 6
OP_POW = 7
FUNC_BASE = 8  # function index f gets opcode FUNC_BASE + f

FUNC_INDEX = {name: i for i, name in enumerate(ex.FUNCTIONS)}

_BINOPS = {ex.Add: OP_ADD, ex.Sub: OP_SUB, ex.Mul: OP_MUL,
           ex.Div: OP_DIV, ex.Pow: OP_POW}


class Program:
    """A compiled expression; evaluates via the selected kernel backend."""

    __slots__ = ("code", "consts", "max_stack", "source_ast")

    def __init__(self, code, consts, max_stack, source_ast):
        self.code = code
        self.consts = consts
        self.max_stack = max_stack
        self.source_ast = source_ast

    def __call__(self, s: float) -> float:
        from . import eval_program
        return eval_program(self, float(s))

    def eval_many(self, svals: np.ndarray) -> np.ndarray:
        from . import eval_program_many
        return eval_program_many(self, svals)


def compile_ast(e: ex.Expr) -> Program:
    code: list[int] = []
    consts: list[float] = []

    def emit(op: int, arg: int = 0):
        code.append(op)
        code.append(arg)

    depth = 0
    max_depth = 0

    def walk(node):
        nonlocal depth, max_depth
        if isinstance(node, ex.Number):
            consts.append(node.value)
            emit(OP_PUSH_CONST, len(consts) - 1)
            depth += 1
            max_depth = max(max_depth, depth)
            return
        if isinstance(node, ex.Var):
            emit(OP_PUSH_S)
            depth += 1
            max_depth = max(max_depth, depth)
            return
        if isinstance(node, ex.Neg):
            walk(node.arg)
            emit(OP_NEG)
            return
        if isinstance(node, ex.Call):
            walk(node.arg)
            emit(FUNC_BASE + FUNC_INDEX[node.fn])
            return
        op = _BINOPS.get(type(node))
        if op is None:
            raise TypeError(f"not an expression node: {node!r}")
        walk(node.a)
        walk(node.b)
        emit(op)
        depth -= 1

    walk(e)
    return Program(
        np.asarray(code, dtype=np.int32),
        np.asarray(consts, dtype=np.float64),
        max_depth,
        e,
    )


def compile_source(src: str) -> Program:
    return compile_ast(ex.parse_expr(src))
