"""3-blocks of a character table and the sigma action on the principal block.

Two irreducible characters lie in the same 3-block when their central
characters agree modulo a prime over 3 on every class.  The principal
block is the one containing the trivial character (row 0 of every table
built in this package).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chartab import CharacterTable
from .cyclo import Cyclotomic, alternative_twist, galois_apply, reduce_mod3, sigma
from .grpzoo import GroupSpec, v3


class NonIntegralError(ValueError):
    """A central character value is not an algebraic integer."""


def central_character(table: CharacterTable, row: int, cls: int) -> Cyclotomic:
    """omega_chi(K) = |K| chi(g_K) / chi(1)."""
    chi = table.irr[row]
    deg = chi[0].rational_value()
    value = chi[cls] * Fraction(table.class_sizes[cls], deg)
    if not value.is_integral():
        raise NonIntegralError(
            f"{table.name}: central character of row {row} on class {cls} is {value}")
    return value


def central_characters(table: CharacterTable) -> list[list[Cyclotomic]]:
    return [[central_character(table, r, c) for c in range(len(table))]
            for r in range(len(table.irr))]


@dataclass
class BlockPartition:
    blocks: list  # sorted lists of row indices, ordered by least row
    principal: int
    defect: int

    def block_of(self, row: int) -> int:
        for i, b in enumerate(self.blocks):
            if row in b:
                return i
        raise IndexError(row)

    @property
    def principal_rows(self) -> list[int]:
        return self.blocks[self.principal]


def block_partition(table: CharacterTable, twist: int = 1, omegas=None) -> BlockPartition:
    """Group rows whose central characters agree mod 3 on every class.

    ``twist`` picks a Galois conjugate of the root used by the reduction;
    the resulting partition must not depend on it.
    """
    omegas = omegas if omegas is not None else central_characters(table)
    groups: dict = {}
    for r, row in enumerate(omegas):
        sig = tuple(reduce_mod3(w, twist).value for w in row)
        groups.setdefault(sig, []).append(r)
    blocks = sorted(groups.values(), key=lambda b: b[0])
    principal = next(i for i, b in enumerate(blocks) if 0 in b)
    return BlockPartition(blocks, principal, v3(table.order))


def alternative_partition(table: CharacterTable, omegas=None) -> BlockPartition:
    """Same partition computed with a different canonical root mod 3."""
    return block_partition(table, alternative_twist(table.exponent), omegas)


@dataclass
class SigmaReport:
    k0: int
    k0_sigma: int
    fixed_rows: list
    orbit_sizes: list  # sigma-orbits on the height-zero principal rows
    all_orbit_sizes: list = field(default_factory=list)  # sigma-orbits on Irr(G)
    permutation: list = field(default_factory=list)  # row r -> row sigma(r)


def sigma_permutation(table: CharacterTable) -> list[int]:
    """Row permutation induced by sigma on Irr(G)."""
    s = sigma(table.exponent)
    index = {tuple(row): r for r, row in enumerate(table.irr)}
    perm = []
    for r, row in enumerate(table.irr):
        image = tuple(galois_apply(s, x) for x in row)
        j = index.get(image)
        if j is None:
            raise ValueError(f"{table.name}: sigma image of row {r} is not a row of the table")
        perm.append(j)
    return perm


def _orbits(perm: list, rows) -> list[int]:
    seen, sizes = set(), []
    for r in rows:
        if r in seen:
            continue
        size, x = 0, r
        while x not in seen:
            seen.add(x)
            size += 1
            x = perm[x]
        sizes.append(size)
    return sorted(sizes)


def sigma_report(table: CharacterTable, partition: BlockPartition) -> SigmaReport:
    perm = sigma_permutation(table)
    degrees = table.degrees
    height_zero = [r for r in partition.principal_rows if degrees[r] % 3]
    fixed = [r for r in height_zero if perm[r] == r]
    return SigmaReport(
        k0=len(height_zero), k0_sigma=len(fixed), fixed_rows=fixed,
        orbit_sizes=_orbits(perm, height_zero),
        all_orbit_sizes=_orbits(perm, range(len(perm))), permutation=perm)


@dataclass
class TheoremACheck:
    group: str
    order: int
    defect: int
    k0: int
    k0_sigma: int
    rank: int
    two_generated: bool
    theorem_a_consistent: bool

    def to_json(self) -> dict:
        return {"group": self.group, "order": self.order, "defect": self.defect,
                "k0": self.k0, "k0_sigma": self.k0_sigma, "rank": self.rank,
                "two_generated": self.two_generated,
                "theorem_a_consistent": self.theorem_a_consistent}


def theorem_a_check(spec: GroupSpec | None, table: CharacterTable, syl3rank: int,
                    partition: BlockPartition | None = None,
                    report: SigmaReport | None = None) -> TheoremACheck:
    """Compare (rank == 2) with (k0_sigma in {6, 9})."""
    partition = partition or block_partition(table)
    report = report or sigma_report(table, partition)
    two = syl3rank == 2
    return TheoremACheck(
        group=spec.name() if spec is not None else table.name, order=table.order,
        defect=partition.defect, k0=report.k0, k0_sigma=report.k0_sigma, rank=syl3rank,
        two_generated=two, theorem_a_consistent=two == (report.k0_sigma in (6, 9)))
