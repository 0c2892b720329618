"""
Hyperplane arrangements over Q(zeta_N), with the deletion/restriction
triple and the cone/decone passage between central and affine arrangements.

A hyperplane is {x : normal . x + constant = 0}; hyperplane order is part
of an arrangement's identity since characters index coordinates by it.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclotomic import Cyclotomic, as_cyclotomic
from .errors import DuplicateHyperplaneError, ValidationError
from .linalg import rref


@dataclass(frozen=True)
class Hyperplane:
    label: str
    normal: Tuple[Cyclotomic, ...]
    constant: Cyclotomic = field(default_factory=Cyclotomic.zero)

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(as_cyclotomic(c) for c in self.normal))
        object.__setattr__(self, "constant", as_cyclotomic(self.constant))
        if all(c.is_zero() for c in self.normal):
            raise ValidationError(f"hyperplane {self.label} has a zero normal vector")

    @property
    def is_central(self) -> bool:
        return self.constant.is_zero()

    def projective_key(self) -> Tuple[Cyclotomic, ...]:
        """(normal, constant) scaled so its first nonzero entry is 1."""
        row = self.normal + (self.constant,)
        lead = next(c for c in row if not c.is_zero())
        inv = lead.inverse()
        return tuple(c * inv for c in row)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.normal, start=1):
            if c.is_zero():
                continue
            coeff = "" if c.is_one() else "-" if c == -1 else f"({c})*"
            terms.append(f"{coeff}x{i}")
        if not self.constant.is_zero():
            terms.append(f"({self.constant})")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "normal": [c.to_json() for c in self.normal],
            "constant": self.constant.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Hyperplane":
        try:
            return cls(
                label=str(data["label"]),
                normal=tuple(Cyclotomic.from_json(c) for c in data["normal"]),
                constant=Cyclotomic.from_json(data["constant"]) if "constant" in data else Cyclotomic.zero(),
            )
        except (KeyError, TypeError) as e:
            raise ValidationError(f"malformed hyperplane {data!r}: {e}")


@dataclass(frozen=True)
class Arrangement:
    name: str
    ambient_dim: int
    hyperplanes: Tuple[Hyperplane, ...]
    conductor: int = 0

    def __post_init__(self):
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        if self.ambient_dim < 1:
            raise ValidationError(f"ambient dimension must be positive, got {self.ambient_dim}")
        labels = set()
        keys: Dict[Tuple[Cyclotomic, ...], str] = {}
        base = 1
        for H in self.hyperplanes:
            if len(H.normal) != self.ambient_dim:
                raise ValidationError(
                    f"hyperplane {H.label} has {len(H.normal)} coordinates, expected {self.ambient_dim}"
                )
            if H.label in labels:
                raise ValidationError(f"duplicate label {H.label}")
            labels.add(H.label)
            key = H.projective_key()
            if key in keys:
                raise DuplicateHyperplaneError(f"{H.label} and {keys[key]} define the same hyperplane")
            keys[key] = H.label
            for c in H.normal + (H.constant,):
                base = math.lcm(base, c.conductor)
        object.__setattr__(self, "conductor", math.lcm(base, self.conductor or 1))

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __getitem__(self, i: int) -> Hyperplane:
        return self.hyperplanes[i]

    def __iter__(self):
        return iter(self.hyperplanes)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(H.label for H in self.hyperplanes)

    @property
    def is_central(self) -> bool:
        return all(H.is_central for H in self.hyperplanes)

    def same_hyperplanes(self, other: "Arrangement") -> bool:
        """Equal up to the name: same dimension, hyperplanes and order."""
        return self.ambient_dim == other.ambient_dim and self.hyperplanes == other.hyperplanes

    def index(self, ref) -> int:
        """Position of a hyperplane given by zero-based index or label."""
        if isinstance(ref, int):
            if not 0 <= ref < len(self):
                raise ValidationError(f"hyperplane index {ref} out of range for {self.name}")
            return ref
        try:
            return self.labels.index(ref)
        except ValueError:
            raise ValidationError(f"{self.name} has no hyperplane labelled {ref!r}")

    @cached_property
    def poset(self):
        from .lattice import intersection_poset

        return intersection_poset(self)

    def deletion(self, ref) -> "Arrangement":
        i = self.index(ref)
        return Arrangement(
            name=f"{self.name}'",
            ambient_dim=self.ambient_dim,
            hyperplanes=self.hyperplanes[:i] + self.hyperplanes[i + 1:],
            conductor=self.conductor,
        )

    def restriction(self, ref) -> "Arrangement":
        return triple(self, ref).restricted

    def permuted(self, order: Sequence[int]) -> "Arrangement":
        if sorted(order) != list(range(len(self))):
            raise ValidationError(f"{list(order)} is not a permutation of the hyperplanes")
        return Arrangement(self.name, self.ambient_dim, tuple(self.hyperplanes[i] for i in order), self.conductor)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ambient_dim": self.ambient_dim,
            "conductor": self.conductor,
            "hyperplanes": [H.to_json() for H in self.hyperplanes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        try:
            return cls(
                name=str(data.get("name", "A")),
                ambient_dim=int(data["ambient_dim"]),
                hyperplanes=tuple(Hyperplane.from_json(h) for h in data["hyperplanes"]),
                conductor=int(data.get("conductor", 0)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"malformed arrangement: {e}")

    def fingerprint(self) -> str:
        payload = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()


# -- families -------------------------------------------------------------


def _unit(ell: int, i: int) -> List[Cyclotomic]:
    row = [Cyclotomic.zero()] * ell
    row[i] = Cyclotomic.one()
    return row


def monomial_arrangement(r: int, full: bool = True) -> Arrangement:
    """A(r,r,3) plus the coordinate hyperplanes; without H3 when full is False."""
    if r < 2:
        raise ValidationError(f"monomial families need r >= 2, got {r}")
    hyperplanes = [Hyperplane(f"H{i + 1}", tuple(_unit(3, i))) for i in range(3 if full else 2)]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        for k in range(1, r + 1):
            normal = _unit(3, i)
            normal[j] = -Cyclotomic.zeta(r, k)
            hyperplanes.append(Hyperplane(f"H{i + 1}{j + 1}:{k}", tuple(normal)))
    name = f"A({r})" if full else f"D({r})"
    return Arrangement(name, 3, tuple(hyperplanes), conductor=r)


def boolean_arrangement(ell: int) -> Arrangement:
    if ell < 1:
        raise ValidationError(f"boolean arrangement needs ell >= 1, got {ell}")
    return Arrangement(f"B({ell})", ell, tuple(Hyperplane(f"H{i + 1}", tuple(_unit(ell, i))) for i in range(ell)))


def braid_arrangement(ell: int) -> Arrangement:
    if ell < 2:
        raise ValidationError(f"braid arrangement needs ell >= 2, got {ell}")
    hyperplanes = []
    for i in range(ell):
        for j in range(i + 1, ell):
            normal = _unit(ell, i)
            normal[j] = -Cyclotomic.one()
            hyperplanes.append(Hyperplane(f"H{i + 1}{j + 1}", tuple(normal)))
    return Arrangement(f"Br({ell})", ell, tuple(hyperplanes))


FAMILIES = ("monomial_full", "monomial_deletion", "boolean", "braid")


def family(name: str, r: Optional[int] = None, ell: Optional[int] = None) -> Arrangement:
    if name == "monomial_full":
        return monomial_arrangement(_required(r, "r", name), full=True)
    if name == "monomial_deletion":
        return monomial_arrangement(_required(r, "r", name), full=False)
    if name == "boolean":
        return boolean_arrangement(_required(ell, "ell", name))
    if name == "braid":
        return braid_arrangement(_required(ell, "ell", name))
    raise ValidationError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def _required(value: Optional[int], what: str, name: str) -> int:
    if value is None:
        raise ValidationError(f"family {name} needs --{what.replace('_', '-')}")
    return value


# -- deletion / restriction -------------------------------------------------


@dataclass(frozen=True)
class Triple:
    """(A, A', A'') for a pivot H; trace[i] lists the A' indices cutting out A''[i]."""

    full: Arrangement
    deleted: Arrangement
    restricted: Arrangement
    pivot: int
    trace: Tuple[Tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "pivot": self.full[self.pivot].label,
            "full": self.full.name,
            "deleted": [H.label for H in self.deleted],
            "restricted": [
                {"label": H.label, "trace": [self.deleted[i].label for i in t]}
                for H, t in zip(self.restricted, self.trace)
            ],
        }


def _restricted_form(H: Hyperplane, K: Hyperplane, p: int) -> Tuple[List[Cyclotomic], Cyclotomic]:
    # substitute x_p = -(constant + sum_{i != p} a_i x_i) / a_p
    ratio = K.normal[p] / H.normal[p]
    normal = [K.normal[i] - ratio * H.normal[i] for i in range(len(K.normal)) if i != p]
    return normal, K.constant - ratio * H.constant


def triple(A: Arrangement, ref) -> Triple:
    if A.ambient_dim == 1:
        raise ValidationError("cannot restrict an arrangement of points")
    pivot = A.index(ref)
    H = A[pivot]
    deleted = A.deletion(pivot)
    p = next(i for i, c in enumerate(H.normal) if not c.is_zero())
    groups: Dict[tuple, List[int]] = {}
    forms: Dict[tuple, Tuple[List[Cyclotomic], Cyclotomic]] = {}
    for idx, K in enumerate(deleted):
        normal, constant = _restricted_form(H, K, p)
        if all(c.is_zero() for c in normal):
            continue  # K parallel to H
        system, _ = rref([list(H.normal) + [H.constant], list(K.normal) + [K.constant]])
        key = tuple(tuple(row) for row in system)
        groups.setdefault(key, []).append(idx)
        forms.setdefault(key, (normal, constant))
    ordered = sorted(groups, key=lambda k: groups[k][0])
    restricted = []
    for key in ordered:
        normal, constant = forms[key]
        restricted.append(Hyperplane(deleted[groups[key][0]].label + "''", tuple(normal), constant))
    return Triple(
        full=A,
        deleted=deleted,
        restricted=Arrangement(f"{A.name}''", A.ambient_dim - 1, tuple(restricted), A.conductor),
        pivot=pivot,
        trace=tuple(tuple(groups[k]) for k in ordered),
    )


# -- cone / decone ------------------------------------------------------------


def decone(A: Arrangement, ref) -> Arrangement:
    """Affine chart pivot = 1 of a central arrangement, dropping the pivot hyperplane."""
    if not A.is_central:
        raise ValidationError(f"{A.name} is not central and cannot be deconed")
    if A.ambient_dim < 2:
        raise ValidationError("deconing needs ambient dimension at least 2")
    pivot = A.index(ref)
    a = A[pivot].normal
    j = next(i for i, c in enumerate(a) if not c.is_zero())
    keep = [i for i in range(A.ambient_dim) if i != j]
    out = []
    for idx, K in enumerate(A):
        if idx == pivot:
            continue
        ratio = K.normal[j] / a[j]
        normal = tuple(K.normal[i] - ratio * a[i] for i in keep)
        out.append(Hyperplane(K.label, normal, ratio))
    return Arrangement(f"d{A.name}[{A[pivot].label}]", A.ambient_dim - 1, tuple(out), A.conductor)


def cone(B: Arrangement, label: str = "H0") -> Arrangement:
    """Central arrangement in one more dimension; the new hyperplane comes first."""
    if label in B.labels:
        raise ValidationError(f"label {label} already used in {B.name}")
    ell = B.ambient_dim + 1
    out = [Hyperplane(label, tuple(_unit(ell, ell - 1)))]
    for K in B:
        out.append(Hyperplane(K.label, K.normal + (K.constant,)))
    return Arrangement(f"c{B.name}", ell, tuple(out), B.conductor)


def decone_coordinates(coords: Sequence, pivot: int) -> tuple:
    """Drop the pivot coordinate of a character whose coordinate product is 1."""
    total = coords[0]
    for x in coords[1:]:
        total = total * x
    if not (total == 1):
        raise ValidationError("only characters with coordinate product 1 descend to the decone")
    return tuple(x for i, x in enumerate(coords) if i != pivot)
