"""Named quivers: Kronecker, Markov and the exceptional mutation-finite types."""
from __future__ import annotations

from .quiver import ExchangeMatrix


def _quiver(names: str, arrows: str) -> ExchangeMatrix:
    """``arrows`` is a space-separated list like ``"a>b c>>d"`` (``>>`` = two arrows)."""
    idx = {v: i for i, v in enumerate(names.split())}
    triples = []
    for tok in arrows.split():
        w = tok.count(">")
        s, t = tok.split(">" * w)
        triples.append((idx[s], idx[t], w))
    return ExchangeMatrix.from_arrows(len(idx), triples)


def kronecker(m: int) -> ExchangeMatrix:
    """``K_m``: m arrows from vertex 0 to vertex 1 (``K_1`` is type A2)."""
    return ExchangeMatrix(((0, m), (-m, 0)))


A2 = kronecker(1)
MARKOV = _quiver("1 2 3", "1>>2 2>>3 3>>1")

EXCEPTIONAL: dict[str, ExchangeMatrix] = {
    "E6": _quiver("c l1 l2 u1 r1 r2", "l2>l1 l1>c u1>c r2>r1 r1>c"),
    "E7": _quiver("c l1 l2 u1 r1 r2 r3", "l2>l1 l1>c u1>c r2>r1 r1>c r3>r2"),
    "E8": _quiver("c l1 l2 u1 r1 r2 r3 r4", "l2>l1 l1>c u1>c r2>r1 r1>c r3>r2 r4>r3"),
    "E6~": _quiver("c l1 l2 u1 u2 r1 r2", "l2>l1 l1>c u1>c r2>r1 r1>c u2>u1"),
    "E7~": _quiver("c l1 l2 l3 u1 r1 r2 r3", "l2>l1 l1>c u1>c r2>r1 r1>c r3>r2 l3>l2"),
    "E8~": _quiver(
        "c l1 l2 u1 r1 r2 r3 r4 r5", "l2>l1 l1>c u1>c r2>r1 r1>c r3>r2 r4>r3 r5>r4"
    ),
    "E6(1,1)": _quiver(
        "u d l1 l2 r1 r2 r3 r4",
        "l2>l1 u>l1 l1>d u>r1 r1>d d>>u r2>r1 r4>r3 u>r3 r3>d",
    ),
    "E7(1,1)": _quiver(
        "u d l1 l2 l3 r1 r2 r3 r4",
        "l3>l2 l2>l1 u>l1 l1>d u>r1 r1>d d>>u r3>r2 r4>r3 u>r2 r2>d",
    ),
    "E8(1,1)": _quiver(
        "u d l1 l2 r1 r2 r3 r4 r5 r6",
        "l2>l1 u>l1 l1>d u>r1 r1>d d>>u r3>r2 r4>r3 u>r2 r2>d r5>r4 r6>r5",
    ),
    "X6": _quiver("c l lu r ru d", "c>l lu>c c>ru r>c d>c l>>lu ru>>r"),
    "X7": _quiver("c l lu r ru dl dr", "c>l lu>c c>ru r>c c>dr dl>c l>>lu ru>>r dr>>dl"),
}

# 3-vertex quiver with a triple arrow and a pendant vertex: mutation-infinite.
TRIPLE_PENDANT = _quiver("1 2 3", "1>>>2 2>3")

BUILTIN: dict[str, ExchangeMatrix] = {
    "A2": A2,
    "K1": A2,
    "K2": kronecker(2),
    "K3": kronecker(3),
    "K4": kronecker(4),
    "K5": kronecker(5),
    "markov": MARKOV,
    "triple-pendant": TRIPLE_PENDANT,
    **EXCEPTIONAL,
}
