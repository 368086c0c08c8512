"""Problem-file parsing: a sectioned TOML subset describing p, the homocyclic
components of P, the orders of L, the action matrices, and the form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

try:
    import tomllib as _toml
except ModuleNotFoundError:  # Python 3.10
    import tomli as _toml

from .abelian import FinAbGroup, LAction, PGroupData
from .cocycles import AlternatingForm
from .errors import BadFormOrder, ParseError, ValidationError
from .scalars import RootScalar, is_prime


@dataclass(frozen=True)
class ProblemFile:
    """Validated instance data as read from disk."""

    p: int
    components: tuple[tuple[int, int], ...]
    l_orders: tuple[int, ...]
    matrices: tuple  # per L generator, per component, nested int lists
    form_entries: tuple[tuple[int, int, int, int], ...]  # (i, j, order, exponent), 0-based
    seed: int

    def p_group(self) -> PGroupData:
        return PGroupData(self.p, self.components)

    def l_group(self) -> FinAbGroup:
        return FinAbGroup(self.l_orders)

    def action(self) -> LAction:
        return LAction(self.p_group(), self.l_group(), self.matrices)

    def form(self) -> AlternatingForm:
        entries = tuple(
            (i, j, RootScalar(order, exponent))
            for i, j, order, exponent in self.form_entries
        )
        return AlternatingForm(self.l_group(), entries)


def _require(cond: bool, msg: str):
    if not cond:
        raise ValidationError(msg)


def parse_data(data: dict) -> ProblemFile:
    _require("p" in data, "missing key: p")
    p = data["p"]
    _require(isinstance(p, int) and is_prime(p), f"p = {p!r} is not a prime")
    seed = data.get("seed", 0)
    _require(isinstance(seed, int), "seed must be an integer")

    pg = data.get("p_group")
    _require(isinstance(pg, dict) and "components" in pg, "missing [p_group] components")
    comps = []
    for entry in pg["components"]:
        _require(
            isinstance(entry, list) and len(entry) == 2 and all(isinstance(x, int) for x in entry),
            f"component {entry!r} must be [exponent, rank]",
        )
        comps.append((entry[0], entry[1]))

    lg = data.get("l_group")
    _require(isinstance(lg, dict) and "orders" in lg, "missing [l_group] orders")
    orders = lg["orders"]
    _require(
        isinstance(orders, list) and all(isinstance(d, int) and d >= 1 for d in orders),
        "l_group orders must be positive integers",
    )

    action = data.get("action")
    _require(isinstance(action, dict) and "generators" in action, "missing [action] generators")
    gens = action["generators"]
    _require(len(gens) == len(orders), "one action entry per L generator required")

    form_entries = []
    for entry in data.get("form", []):
        for key in ("i", "j", "order", "exponent"):
            _require(key in entry, f"form entry missing key {key!r}")
        i, j = entry["i"], entry["j"]
        _require(
            isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= len(orders),
            f"form entry pair ({i}, {j}) out of range (1-based, i < j)",
        )
        form_entries.append((i - 1, j - 1, entry["order"], entry["exponent"]))

    pf = ProblemFile(
        p=p,
        components=tuple(comps),
        l_orders=tuple(orders),
        matrices=tuple(tuple(m for m in gen) for gen in gens),
        form_entries=tuple(form_entries),
        seed=seed,
    )
    # the constructors run the structural validation (orders, commuting,
    # faithfulness, form orders); surface their complaints uniformly
    try:
        pf.p_group()
        pf.action()
        pf.form()
    except ValidationError:
        raise
    except (BadFormOrder, ValueError, TypeError, IndexError) as exc:
        raise ValidationError(str(exc)) from exc
    return pf


def parse(path: str) -> ProblemFile:
    try:
        with open(path, "rb") as fh:
            data = _toml.load(fh)
    except FileNotFoundError:
        raise ParseError(None, f"no such file: {path}")
    except _toml.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ParseError(int(m.group(1)) if m else None, str(exc))
    return parse_data(data)
