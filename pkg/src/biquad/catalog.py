"""Built-in catalog of bi-quadratic algebras.

Fixed algebras live as ``.alg`` files under ``data/catalog``.  Families that
depend on a size (polynomial rings, Weyl algebras, ...) are produced as text
in the same file format and then parsed, so every catalog entry goes through
the file parser.  The default family members are also shipped as files.

    >>> catalog_get("weyl", n=1).get_b(1, 2)
    Scalar('-1')
"""

from __future__ import annotations

import re
from importlib import resources
from typing import Dict, List, Mapping, Optional

from .formats import parse_presentation_file
from .presentation import AlgebraPresentation
from .scalar import Scalar, parse_scalar

__all__ = [
    "UnknownName",
    "FAMILIES",
    "DEFAULT_ENTRIES",
    "catalog_names",
    "catalog_text",
    "catalog_get",
    "family_text",
]


class UnknownName(KeyError):
    pass


def _header(name: str, n: int, params=(), orientation="descending", comment: str = "") -> List[str]:
    lines = [f"# {comment}"] if comment else []
    lines += [f'algebra "{name}"', f"generators {n}"]
    if params:
        lines.append("parameters " + ", ".join(params))
    lines.append(f"orientation {orientation}")
    return lines


def polynomial_text(n: int = 3) -> str:
    return "\n".join(_header(f"polynomial-{n}", n, comment=f"commutative polynomial ring in {n} variables")) + "\n"


def weyl_text(n: int = 1) -> str:
    # y_i = x_{n+i}; y_i x_i = x_i y_i - 1, everything else commutes
    lines = _header(f"weyl-{n}", 2 * n, comment=f"Weyl algebra A_{n}: x_(n+i) x_i = x_i x_(n+i) - 1")
    lines += [f"b {i} {n + i} = -1" for i in range(1, n + 1)]
    return "\n".join(lines) + "\n"


def multiplicative_weyl_text(n: int = 3, lam: Optional[Mapping] = None) -> str:
    """x_j x_i = lam_ij x_i x_j; missing table entries become parameters l<i><j>."""
    lam = dict(lam or {})
    params, lines = [], []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            v = lam.get((i, j))
            if v is None:
                v = f"l{i}{j}" if n < 10 else f"l{i}_{j}"
                params.append(v)
            else:
                v = v.render() if isinstance(v, Scalar) else str(v)
                params += sorted(parse_scalar(v).parameters() - set(params))
            lines.append(f"q {i} {j} = {v}")
    head = _header(f"multiplicative-weyl-{n}", n, params,
                   comment="multiplicative analogue of the Weyl algebra: x_j x_i = l_ij x_i x_j")
    return "\n".join(head + lines) + "\n"


def shift_ops_text(n: int = 1, m: int = 1) -> str:
    # t_i = x_i, E_j = x_{n+j}; E_i t_i = t_i E_i + E_i
    lines = _header(f"shift-ops-{n}-{m}", n + m,
                    comment="linear partial shift operators: E_i t_i = t_i E_i + E_i")
    lines += [f"a {i} {n + i} {n + i} = 1" for i in range(1, min(n, m) + 1)]
    return "\n".join(lines) + "\n"


def difference_ops_text(n: int = 1, m: int = 1) -> str:
    # Delta_i t_i = t_i Delta_i + Delta_i + 1
    lines = _header(f"difference-ops-{n}-{m}", n + m,
                    comment="linear partial difference operators: D_i t_i = t_i D_i + D_i + 1")
    for i in range(1, min(n, m) + 1):
        lines += [f"a {i} {n + i} {n + i} = 1", f"b {i} {n + i} = 1"]
    return "\n".join(lines) + "\n"


def q_heisenberg_text(n: int = 1) -> str:
    # x_i, y_i = x_{n+i}, z_i = x_{2n+i}
    lines = _header(f"q-heisenberg-{n}", 3 * n, ["q"], "ascending",
                    comment="q-Heisenberg algebra H_n(q): x z = q z x, z y = q y z, x y = q^-1 y x - z")
    for i in range(1, n + 1):
        y, z = n + i, 2 * n + i
        lines += [
            f"q {i} {y} = q^-1",
            f"a {i} {y} {z} = -1",
            f"q {i} {z} = q",
            f"q {y} {z} = q^-1",
        ]
    return "\n".join(lines) + "\n"


FAMILIES: Dict[str, tuple] = {
    # name: (text builder, positional size arguments and their defaults)
    "polynomial": (polynomial_text, ("n",), (3,)),
    "weyl": (weyl_text, ("n",), (1,)),
    "multiplicative-weyl": (multiplicative_weyl_text, ("n",), (3,)),
    "shift-ops": (shift_ops_text, ("n", "m"), (1, 1)),
    "difference-ops": (difference_ops_text, ("n", "m"), (1, 1)),
    "q-heisenberg": (q_heisenberg_text, ("n",), (1,)),
}

FIXED = (
    "quantum-plane", "u-n2", "quantum-weyl", "uq-so3", "aw3", "dispin",
    "u-sl2", "u-so3", "wq-sl2", "cyclic-quantum-weyl-3",
)

# every shipped file, in a stable order
DEFAULT_ENTRIES = (
    "polynomial-1", "polynomial-2", "polynomial-3", "polynomial-4",
    "quantum-plane", "weyl-1", "weyl-2", "u-n2", "quantum-weyl",
    "multiplicative-weyl-3", "shift-ops-1-1", "difference-ops-1-1",
    "cyclic-quantum-weyl-3",
    "q-heisenberg-1", "uq-so3", "aw3", "dispin", "u-sl2", "u-so3", "wq-sl2",
)


def family_text(family: str, *sizes: int, **kw) -> str:
    builder, _, defaults = FAMILIES[family]
    args = list(sizes) + list(defaults[len(sizes):])
    return builder(*args, **kw)


def _data_file(name: str) -> Optional[str]:
    path = resources.files(__package__).joinpath("data", "catalog", f"{name}.alg")
    return path.read_text(encoding="utf-8") if path.is_file() else None


def _split(name: str):
    """'shift-ops-2-1' -> ('shift-ops', (2, 1))."""
    if name in FIXED:
        return name, ()
    m = re.fullmatch(r"([a-z][a-z0-9-]*?)((?:-\d+)*)", name)
    if m is None:
        return name, ()
    sizes = tuple(int(x) for x in m.group(2).split("-")[1:])
    return m.group(1), sizes


def catalog_names() -> List[str]:
    return list(DEFAULT_ENTRIES)


def catalog_text(name: str, **kw) -> str:
    """File text for a catalog entry; families accept size keywords (n=, m=)."""
    base, sizes = _split(name)
    if base in FAMILIES:
        _, argnames, defaults = FAMILIES[base]
        extra = {k: kw.pop(k) for k in list(kw) if k in argnames}
        vals = list(sizes) + list(defaults[len(sizes):])
        for i, a in enumerate(argnames):
            if a in extra:
                vals[i] = int(extra[a])
        if len(sizes) > len(argnames) or any(v < 1 for v in vals):
            raise UnknownName(name)
        canonical = base + "".join(f"-{v}" for v in vals)
        if not kw:
            text = _data_file(canonical)
            if text is not None:
                return text
        return FAMILIES[base][0](*vals, **kw)
    if sizes or kw:
        raise UnknownName(name)
    text = _data_file(name)
    if text is None:
        raise UnknownName(name)
    return text


def catalog_get(name: str, **kw) -> AlgebraPresentation:
    """Presentation of a catalog entry, in descending orientation.

    ``name`` is a fixed name (``"quantum-plane"``), a family name with size
    keywords (``"weyl", n=2``) or a sized family name (``"weyl-2"``).
    """
    return parse_presentation_file(catalog_text(name, **kw))
