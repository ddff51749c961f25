"""Scheme configuration files (JSON).

Field elements are written as their integer encodings.  A minimal config::

    {"field": {"p": 7},
     "curve": {"family": "elliptic", "coefficients": [0, 0, 0, 5, 4]},
     "points": {"rule": "multiples", "generator": [3, 2], "count": 9},
     "m": 3}

Point rules:

* ``explicit``: ``"list"`` of points (ints for genus 0, [x, y] or [x, y, z]);
* ``multiples``: k * generator for k = 1..count (elliptic only);
* ``all_affine``: every field element (genus 0) or every affine point (elliptic);
* ``klein_default``: Q2 followed by the 21 points with x, y != 0 (Klein only).

``secret`` names the dealer's point; it is moved to the front of D.  Without
it the first point of the rule is the dealer's.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .curve import CurvePoint, EllipticCurve, KleinQuartic, ProjectivePlanePoint
from .gf import Field, field_new
from .lsss import DEFAULT_RANDOMNESS_BUDGET, DEFAULT_SUBSET_BUDGET, scheme_from_ag
from .code import DEFAULT_CODEWORD_BUDGET

__all__ = ["ConfigError", "SchemeConfig", "load_config", "parse_config"]

FAMILIES = ("genus0", "elliptic", "klein")
RULES = ("explicit", "multiples", "all_affine", "klein_default")
VARIANTS = ("omega", "functional")


class ConfigError(ValueError):
    pass


def _need(cond, msg):
    if not cond:
        raise ConfigError(msg)


def _int(v, what):
    _need(isinstance(v, int) and not isinstance(v, bool), f"{what} must be an integer")
    return v


@dataclass
class SchemeConfig:
    p: int
    k: int = 1
    modulus: Optional[list] = None
    family: str = "genus0"
    coefficients: list = dc_field(default_factory=lambda: [0, 0, 0, 0, 0])
    rule: str = "explicit"
    points: Optional[list] = None      # explicit list
    generator: Optional[list] = None   # multiples
    count: Optional[int] = None
    secret: object = None
    m: Optional[int] = None
    variant: str = "omega"
    budget_subsets: int = DEFAULT_SUBSET_BUDGET
    budget_codewords: int = DEFAULT_CODEWORD_BUDGET
    budget_randomness: int = DEFAULT_RANDOMNESS_BUDGET

    # parsing

    @classmethod
    def from_dict(cls, d) -> SchemeConfig:
        _need(isinstance(d, dict), "config must be a JSON object")
        unknown = set(d) - {"field", "curve", "points", "secret", "m", "variant", "budgets"}
        _need(not unknown, f"unknown config keys {sorted(unknown)}")
        f = d.get("field")
        _need(isinstance(f, dict) and "p" in f, "config needs field.p")
        c = d.get("curve", {"family": "genus0"})
        _need(isinstance(c, dict), "curve must be an object")
        pts = d.get("points")
        _need(isinstance(pts, dict) and "rule" in pts, "config needs points.rule")
        b = d.get("budgets", {})
        _need(isinstance(b, dict), "budgets must be an object")
        cfg = cls(
            p=_int(f["p"], "field.p"),
            k=_int(f.get("k", 1), "field.k"),
            modulus=f.get("modulus"),
            family=c.get("family", "genus0"),
            coefficients=list(c.get("coefficients", [0, 0, 0, 0, 0])),
            rule=pts["rule"],
            points=pts.get("list"),
            generator=pts.get("generator"),
            count=pts.get("count"),
            secret=d.get("secret"),
            m=d.get("m"),
            variant=d.get("variant", "omega"),
            budget_subsets=_int(b.get("subsets", DEFAULT_SUBSET_BUDGET), "budgets.subsets"),
            budget_codewords=_int(b.get("codewords", DEFAULT_CODEWORD_BUDGET), "budgets.codewords"),
            budget_randomness=_int(b.get("randomness", DEFAULT_RANDOMNESS_BUDGET),
                                   "budgets.randomness"),
        )
        cfg.validate()
        return cfg

    def validate(self):
        _need(self.family in FAMILIES, f"curve.family must be one of {FAMILIES}")
        _need(self.rule in RULES, f"points.rule must be one of {RULES}")
        _need(self.variant in VARIANTS, f"variant must be one of {VARIANTS}")
        _need(len(self.coefficients) == 5, "curve.coefficients needs [a1, a3, a2, a4, a6]")
        q = self.p ** self.k
        _need(all(isinstance(c, int) and 0 <= c < q for c in self.coefficients),
              "curve.coefficients must be field encodings")
        if self.family == "klein":
            _need(self.m in (None, 4), "the Klein divisor has degree 4")
        else:
            _int(self.m, "m")
        if self.rule == "explicit":
            _need(isinstance(self.points, list) and self.points, "points.list must be non-empty")
        if self.rule == "multiples":
            _need(self.family == "elliptic", "points.rule 'multiples' needs an elliptic curve")
            _need(isinstance(self.generator, list), "points.generator is required")
            _int(self.count, "points.count")
        if self.rule == "klein_default":
            _need(self.family == "klein", "points.rule 'klein_default' needs the Klein curve")
        for name in ("budget_subsets", "budget_codewords", "budget_randomness"):
            _need(getattr(self, name) > 0, f"{name} must be positive")
        try:
            self.field()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    # serialization

    def to_dict(self) -> dict:
        F = self.field()
        pts = {"rule": self.rule}
        if self.rule == "explicit":
            pts["list"] = self.points
        if self.rule == "multiples":
            pts["generator"] = self.generator
            pts["count"] = self.count
        return {
            "field": F.to_dict(),
            "curve": {"family": self.family, "coefficients": list(self.coefficients)},
            "points": pts,
            "secret": self.secret,
            "m": 4 if self.family == "klein" else self.m,
            "variant": self.variant,
            "budgets": {"subsets": self.budget_subsets, "codewords": self.budget_codewords,
                        "randomness": self.budget_randomness},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    # construction

    def field(self) -> Field:
        mod = tuple(self.modulus) if self.modulus is not None else None
        return field_new(self.p, self.k, mod)

    def curve(self):
        F = self.field()
        try:
            if self.family == "genus0":
                return F
            if self.family == "elliptic":
                return EllipticCurve.from_coefficients(F, self.coefficients)
            return KleinQuartic(F)
        except ValueError as exc:
            raise ConfigError(f"curve: {exc}") from None

    def _point(self, curve, raw):
        q = self.field().q
        flat = raw if isinstance(raw, list) else [raw]
        _need(all(isinstance(v, int) and not isinstance(v, bool) and 0 <= v < q for v in flat),
              f"bad point {raw!r}: coordinates must be field encodings 0..{q - 1}")
        if self.family == "genus0":
            _need(isinstance(raw, int), f"bad affine point {raw!r}")
            return raw
        if self.family == "elliptic":
            _need(isinstance(raw, list) and len(raw) == 2, f"bad point {raw!r}")
            P = CurvePoint(*raw)
            _need(curve.contains(P), f"{raw} is not on the curve")
            return P
        _need(isinstance(raw, list) and len(raw) == 3, f"bad projective point {raw!r}")
        try:
            P = ProjectivePlanePoint.normalize(curve.field, *raw)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        _need(curve.equation(*P) == 0, f"{raw} is not on the Klein quartic")
        return P

    def points_list(self, curve=None) -> list:
        curve = curve or self.curve()
        if self.rule == "explicit":
            D = [self._point(curve, raw) for raw in self.points]
        elif self.rule == "multiples":
            G = self._point(curve, self.generator)
            D = [curve.scalar_mul(i, G) for i in range(1, self.count + 1)]
        elif self.rule == "all_affine":
            if self.family == "genus0":
                D = list(range(curve.q))
            elif self.family == "elliptic":
                D = [P for P in curve.rational_points() if not P.is_infinity]
            else:
                raise ConfigError("all_affine is not defined for the Klein curve")
        else:
            D = curve.default_D()
        _need(len(set(D)) == len(D), "points repeat")
        if self.secret is not None:
            S = self._point(curve, self.secret)
            _need(S in D, "the secret point is not among the points")
            D.remove(S)
            D.insert(0, S)
        return D

    def build(self, seed: int = 0):
        """(curve, D, scheme)."""
        curve = self.curve()
        D = self.points_list(curve)
        m = 4 if self.family == "klein" else self.m
        return curve, D, scheme_from_ag(curve, D, m, self.variant, seed=seed)


def parse_config(text: str) -> SchemeConfig:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    return SchemeConfig.from_dict(d)


def load_config(path) -> SchemeConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    return parse_config(text)
