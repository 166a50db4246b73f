"""
Twisted Morava K-homology by the universal coefficient theorem

    K(n)_*(X; H) = K(n)_*(P_H) tensor_A K(n)_*,    A = K(n)_* of the fibre,

with K(n)_* an A-module through the twist character. Three mechanisms
give answers:

- Eilenberg-MacLane spaces: P_k for k*iota on K(Z, n+2) is K(Z/k, n+1),
  which is K(n)-acyclic, so A acts on K(n)_* through the augmentation and
  the twist character kills the unit.
- Free covers: when K(n)_*(P) = A tensor C, tensoring with any character
  returns C, so the twisted and untwisted homology agree.
- Character clash: when the bottom generator acts by zero on classes that
  generate K(n)_*(P), the chain 1 (x) 1 = 1 (x) b_0 = b_0 (x) 1 = 0 kills everything.

Classes:
    Outcome: zero, untwisted, or an explicit table
    Verdict: Outcome, statement, certificate steps and optional dimensions

Functions:
    two_local_part: k = 2^j * m with m odd
    twisted_em: Dimensions of K(n)_*(K(Z, n+2); k) at truncation J
    em_verdict: The same at J and J + 1, as a verdict
    twisted_module: An explicit module tensored with a twist character
    twisted_cover: Free covers are untwisted
    clash_vanishing: Covers whose bottom generator acts by zero vanish
    numeric_cover: Unflagged covers with explicit homology
    mod2_twisted: The mod-2 flavor of the last two
    twisted_homology: Pick the mechanism a catalog entry supports
    acyclic_fiber / k_equivalent: Covers with K(n)-acyclic fibres
"""

import logging
from dataclasses import dataclass

import numpy as np
import sympy
from django.db import models

from catalog.algebras import em_algebra, twist_character
from catalog.descriptors import CoverBase, Flag, SpaceDescriptor, SpaceKind, TwistFlavor, whitehead_base
from graded import fields
from graded.algebra import GradedDims, Height
from hopf_modules.characters import Character, tensor_character
from hopf_modules.freeness import freeness_certificate
from hopf_modules.modules import ModuleOverAlgebra, tensor_dims, unit_module
from uct.exceptions import RefusedComputation, UCTError
from uct.twists import TwistSpec

logger = logging.getLogger(__name__)

KNOWN_COVERS = {('BO', 2): 'BSO', ('BO', 4): 'BSpin', ('BO', 8): 'BString', ('BO', 16): 'BFivebrane'}


class Outcome(models.TextChoices):
    ZERO = 'zero', 'Twisted homology vanishes'
    UNTWISTED = 'untwisted', 'Isomorphic to the untwisted homology'
    DIMS = 'dims', 'Explicit dimension table'


@dataclass(frozen=True)
class Verdict:
    """The answer to a twisted homology question.

    Attributes
    ----------
    outcome : str
        One of ``Outcome``.
    statement : str
        The isomorphism or vanishing statement.
    certificate : tuple of str
        Steps that derive the statement from the inputs.
    dims : GradedDims or None
        Numeric dimensions when the inputs were numeric.
    j_stable : bool or None
        Whether truncations J and J + 1 agree; None when no truncation entered.
    looped : str
        The statement for the loop space, when the cover theorem has one.
    """

    outcome: str
    statement: str
    certificate: tuple[str, ...] = ()
    dims: GradedDims | None = None
    j_stable: bool | None = None
    looped: str = ''

    def as_record(self) -> dict:
        record = {'outcome': str(self.outcome), 'statement': self.statement}
        if self.looped:
            record['looped'] = self.looped
        if self.dims is not None:
            record['dims'] = str(self.dims)
            record['total'] = self.dims.total
        if self.j_stable is not None:
            record['j_stable'] = self.j_stable
        record['certificate'] = list(self.certificate)
        return record

    def __str__(self):
        return self.statement


def two_local_part(k: int) -> tuple[int, int]:
    """``(j, m)`` with ``k = 2^j * m`` and m odd."""
    if k < 1:
        raise UCTError({"k": f"multiplier must be positive, got {k}"})
    j = sympy.multiplicity(2, k)
    return j, k // 2 ** j


def _require_two(height: Height):
    if height.p != 2:
        raise UCTError({"prime": f"twisted K(n) is defined at p = 2 only, got p = {height.p}"})


def total_space_module(height: Height, k: int, truncation: int) -> ModuleOverAlgebra:
    """K(n)_*(P_k) = K(n)_* K(Z/k, n+1) as a module over R(b_0) ... R(b_(J-1)).

    The fibre acts through the augmentation: P_k has the K(n)-homology of
    its p-primary part, and K(Z/2^j, n+1) has that of a point.
    """
    j, m = two_local_part(k)
    total = em_algebra(height, k, height.n + 1)
    logger.debug("P_%d = K(Z/%d, %d): 2-primary part 2^%d, odd part %d", k, k, height.n + 1, j, m)
    fibre = em_algebra(height, None, height.n + 1, truncation)
    return tensor_dims(unit_module(fibre), total.hilbert())


def twisted_em(height: Height, k: int, truncation: int) -> GradedDims:
    """K(n)_*(K(Z, n+2); k*iota) computed at truncation J.

    Raises
    ------
    UCTError
        For k < 1, p != 2 or J < 1.
    """
    _require_two(height)
    if truncation < 1:
        raise UCTError({"truncation": f"truncation must be at least 1, got {truncation}"})
    module = total_space_module(height, k, truncation)
    return tensor_character(module, twist_character(height, truncation))


def em_verdict(height: Height, k: int, truncation: int) -> Verdict:
    """``twisted_em`` at J and J + 1, with the derivation."""
    dims = twisted_em(height, k, truncation)
    stable = twisted_em(height, k, truncation + 1) == dims
    n = height.n
    j, m = two_local_part(k)
    steps = (
        f"k = {k} = 2^{j} * {m}",
        f"P_k = K(Z/{k}, {n + 1}); only Z/{2 ** j} is seen at p = 2",
        f"K({n})_* K(Z/{2 ** j}, {n + 1}) = K({n})_* since {n + 1} > {n}",
        f"A = K({n})_* K(Z, {n + 1}), truncated at J = {truncation}, acts through the augmentation",
        "twist character b0 -> 1: 1 ⊗ 1 = 1 ⊗ b0 = b0 ⊗ 1 = 0 ⊗ 1 = 0",
    )
    if dims.is_zero:
        return Verdict(Outcome.ZERO, f"K({n})_*(K(Z, {n + 2}); {k}) = 0", steps, dims, stable)
    logger.warning("K(%d)_*(K(Z, %d); %d) is nonzero: %s", n, n + 2, k, dims)
    return Verdict(Outcome.DIMS, f"K({n})_*(K(Z, {n + 2}); {k}) = {dims}", steps, dims, stable)


def twisted_module(module: ModuleOverAlgebra, character: Character, label: str = "P") -> Verdict:
    """``module`` tensored over its algebra with the character, as a table."""
    dims = tensor_character(module, character)
    outcome = Outcome.ZERO if dims.is_zero else Outcome.DIMS
    statement = f"{label} ⊗_A K(n)_*({character}) = {dims if dims.dims else 0}"
    return Verdict(outcome, statement, (f"tensor_character on a module of dimension {module.dimension}",), dims)


def cover_label(base: CoverBase | None, space: SpaceDescriptor) -> str:
    if base is None:
        return space.name
    return KNOWN_COVERS.get((base.family, base.cover), f"{base.family}<{base.cover}>")


def _check_twist(space: SpaceDescriptor, twist: TwistSpec):
    if space.kind != SpaceKind.STRUCTURAL_COVER:
        raise UCTError({"space": f"'{space.name}' is a {space.kind} entry, not a cover"})
    if twist.height != space.height:
        raise UCTError({"height": f"twist at {twist.height}, space at {space.height}"})
    if twist.flavor != space.flavor:
        raise UCTError({"twist": f"'{space.name}' carries {space.flavor} twists, got a {twist.flavor} one"})


def _cover_theorem(space: SpaceDescriptor, twist: TwistSpec) -> tuple[str, str, list[str]]:
    """Statement, looped statement and hypothesis steps of the cover theorem for ``space``.

    Raises
    ------
    RefusedComputation
        When a hypothesis on n or on the base fails.
    """
    n = space.height.n
    base = space.base
    label = cover_label(base, space)
    steps = [f"{base} is a base of a Hopf algebra short exact sequence"]

    def refuse(reason):
        logger.warning("cover theorem refused for %s: %s", space.name, reason)
        raise RefusedComputation({"hypotheses": reason})

    if twist.flavor == TwistFlavor.MOD_2:
        if n % 8 not in (1, 2) or n < 8:
            refuse(f"the mod-2 cover theorem needs n = 1, 2 mod 8 and n >= 8, got n = {n}")
        if base.family != 'BO' or base.cover != whitehead_base(n).cover:
            refuse(f"the mod-2 cover theorem is about BO<{n}>, got {base}")
        steps.append(f"n = {n} = {n % 8} mod 8, n >= 8; fibre K(Z/2, {n})")
        statement = f"K({n})_*({label}; {twist}) ≅ K({n})_*({label})"
        looped = f"K({n})_*(O<{n}>; h_{n}) ≅ K({n})_*(O<{n}>)"
        return statement, looped, steps

    if base.family == 'BU':
        if n % 2 == 0:
            refuse(f"the BU cover theorem needs n odd, got n = {n}")
        if base.cover != whitehead_base(n + 1, 'BU').cover:
            refuse(f"the BU cover theorem is about BU<{n + 1}>, got {base}")
        steps.append(f"n = {n} is odd; fibre K(Z, {n + 1})")
        statement = f"K({n})_*({label}; {twist}) ≅ K({n})_*({label})"
        looped = f"K({n - 1})_*(U<{n + 1}>; H_{n + 1}) ≅ K({n - 1})_*(U<{n + 1}>)"
        return statement, looped, steps

    if n % 8 not in (2, 6) or n < 6:
        refuse(f"the BO cover theorem needs n = 2, 6 mod 8 and n >= 6, got n = {n}")
    if base.cover != whitehead_base(n + 2).cover:
        refuse(f"the BO cover theorem is about BO<{n + 2}>, got {base}")
    steps.append(f"n = {n} = {n % 8} mod 8, n >= 6; fibre K(Z, {n + 1})")
    statement = f"K({n})_*({label}; {twist}) ≅ K({n})_*({label})"
    looped = f"K({n - 1})_*(O<{n + 1}>; H_{n + 1}) ≅ K({n - 1})_*(O<{n + 1}>)"
    return statement, looped, steps


def twisted_cover(space: SpaceDescriptor, twist: TwistSpec) -> Verdict:
    """A cover whose total-space homology is free over the fibre algebra is untwisted.

    With explicit homology (a module or a dims table) the freeness is
    certified and the dimensions returned; otherwise the free-over-A flag and
    the cover theorem's hypotheses give a symbolic verdict.

    Raises
    ------
    RefusedComputation
        Without explicit homology or the free-over-A flag, when freeness
        cannot be certified, or when the cover theorem does not apply.
    """
    _check_twist(space, twist)
    instance = space.numeric_module
    if instance is None and not space.has_flag(Flag.FREE_OVER_A):
        raise RefusedComputation({"flags": f"'{space.name}' is not flagged free-over-A"})
    algebra = space.algebra
    steps = [f"K({space.height.n})_*(P) is free over A = {algebra}"]

    if instance is not None:
        certificate = freeness_certificate(instance)
        if not certificate:
            raise RefusedComputation({"module": f"'{space.name}' is not free: {certificate.reason}"})
        classes = certificate.classes
        twisted = tensor_character(instance, twist.character_on(algebra), check=False)
        untwisted = tensor_character(instance, Character.augmentation(algebra), check=False)
        if twisted != classes or untwisted != classes:
            raise UCTError({"module": f"tensor products {twisted}, {untwisted} disagree with the classes {classes}"})
        steps += [
            f"freeness certificate: P = A ⊗ C with C = {classes}",
            f"(A ⊗ C) ⊗_A K(n)_*(chi) = C for the twist and for the augmentation",
        ]
        statement = f"K({space.height.n})_*({space.name}; {twist}) ≅ K({space.height.n})_*({space.name}) = {classes}"
        logger.info("%s: untwisted, %s", space.name, classes)
        return Verdict(Outcome.UNTWISTED, statement, tuple(steps), classes)

    statement, looped, hypotheses = _cover_theorem(space, twist)
    steps = hypotheses + steps + ["(A ⊗ C) ⊗_A K(n)_*(chi) = C for every character chi"]
    logger.info("%s: %s", space.name, statement)
    return Verdict(Outcome.UNTWISTED, statement, tuple(steps), looped=looped)


def generated_by_kernel(module: ModuleOverAlgebra, name: str) -> bool:
    """Whether ``module`` is generated over its algebra by the classes ``name`` kills."""
    if module.dimension == 0:
        return True
    kernel = fields.nullspace(module.action(name), module.p)
    columns = [
        fields.matmul(module.monomial_matrix(monomial), vector, module.p)
        for vector in kernel
        for monomial in module.algebra.monomial_basis
    ]
    if not columns:
        return False
    return fields.rank(np.array(columns), module.p) == module.dimension


def clash_vanishing(space: SpaceDescriptor, twist: TwistSpec) -> Verdict:
    """A cover whose bottom generator acts by zero on the unit has vanishing twisted homology.

    The numeric instance is the cover's explicit module when it has one,
    the unit module with the augmentation otherwise.

    Raises
    ------
    RefusedComputation
        Without the b0-killed (a0-killed) flag, for an even multiple of the
        class, or when the module is not generated by classes the bottom
        generator kills.
    """
    _check_twist(space, twist)
    flag = Flag.B0_KILLED if twist.flavor == TwistFlavor.INTEGRAL else Flag.A0_KILLED
    g = twist.generator
    if not space.has_flag(flag):
        raise RefusedComputation({"flags": f"'{space.name}' is not flagged {flag}"})
    if not twist.is_odd:
        raise RefusedComputation({"twist": f"{twist} sends {g} to 0; there is no clash"})

    n = space.height.n
    algebra = space.algebra
    instance = space.numeric_module
    if instance is None:
        instance = unit_module(algebra)
    if not generated_by_kernel(instance, g):
        raise RefusedComputation({"module": f"'{space.name}' is not generated by classes {g} kills"})
    dims = tensor_character(instance, twist.character_on(algebra))
    if not dims.is_zero:
        raise UCTError({"module": f"clash left {dims}"})

    label = cover_label(space.base, space)
    steps = (
        f"twist character sends {g} to 1",
        f"{g} acts by zero on the unit of K({n})_*(P)",
        f"1 ⊗ 1 = 1 ⊗ {g} = {g} ⊗ 1 = 0 ⊗ 1 = 0",
        "the unit generates K(n)_*(P) over A, so a.1 ⊗ 1 = 1 ⊗ chi(a) = 0 for every a",
        f"numeric instance: tensor_character on a module of dimension {instance.dimension} gives 0",
    )
    logger.info("%s: K(%d)_*(%s; %s) = 0", space.name, n, label, twist)
    return Verdict(Outcome.ZERO, f"K({n})_*({label}; {twist}) = 0", steps, dims)


def numeric_cover(space: SpaceDescriptor, twist: TwistSpec) -> Verdict:
    """An unflagged cover with explicit homology: the free-cover verdict when it is free, the table otherwise."""
    _check_twist(space, twist)
    instance = space.numeric_module
    if freeness_certificate(instance):
        return twisted_cover(space, twist)
    return twisted_module(instance, twist.character_on(space.algebra), label=f"K({space.height.n})_*({space.name})")


def mod2_twisted(space: SpaceDescriptor | ModuleOverAlgebra, twist: TwistSpec) -> Verdict:
    """The mod-2 flavor: modules over R(a_0) ... R(a_(j-1)) and covers with mod-2 flags."""
    if twist.flavor != TwistFlavor.MOD_2:
        raise UCTError({"twist": f"{twist} is not a mod-2 twist"})
    if isinstance(space, ModuleOverAlgebra):
        return twisted_module(space, twist.character_on(space.algebra))
    if space.has_flag(Flag.FREE_OVER_A):
        return twisted_cover(space, twist)
    if space.has_flag(Flag.A0_KILLED):
        return clash_vanishing(space, twist)
    if space.numeric_module is not None:
        return numeric_cover(space, twist)
    raise RefusedComputation({"flags": f"'{space.name}' has no structural flag for a mod-2 twist"})


def twisted_homology(space: SpaceDescriptor, twist: TwistSpec, truncation: int = 2) -> Verdict:
    """The verdict the entry's kind and flags support.

    ``truncation`` is the J used for K(Z, n+2); covers use their own.

    Raises
    ------
    UCTError
        For kinds the universal coefficient theorem is not run on here.
    RefusedComputation
        For a cover without a usable flag.
    """
    n = space.height.n
    if space.kind == SpaceKind.EM_INTEGRAL:
        if space.degree != n + 2:
            raise UCTError({"space": f"K(Z, {space.degree}) carries no twist at height {n}; use K(Z, {n + 2})"})
        if twist.flavor != TwistFlavor.INTEGRAL:
            raise UCTError({"twist": f"K(Z, {n + 2}) takes integral twists"})
        if twist.multiplier < 1:
            raise UCTError({"twist": f"multiplier must be positive, got {twist.multiplier}"})
        return em_verdict(space.height, twist.multiplier, truncation)
    if space.kind != SpaceKind.STRUCTURAL_COVER:
        raise UCTError({"space": f"'{space.name}' is a {space.kind} entry; use the spectral sequence"})
    if twist.flavor == TwistFlavor.MOD_2:
        return mod2_twisted(space, twist)
    if space.has_flag(Flag.FREE_OVER_A):
        return twisted_cover(space, twist)
    if space.has_flag(Flag.B0_KILLED):
        return clash_vanishing(space, twist)
    if space.numeric_module is not None:
        return numeric_cover(space, twist)
    raise RefusedComputation({"flags": f"'{space.name}' has no structural flag for an integral twist"})


def acyclic_fiber(height: Height, q: int) -> bool:
    """Whether K(Z, q) is K(n)-acyclic, i.e. q > n + 1."""
    if q < 1:
        raise UCTError({"q": f"degree must be at least 1, got {q}"})
    return q > height.n + 1


def k_equivalent(height: Height, fiber_degree: int) -> bool:
    """Whether a cover with fibre K(Z, fiber_degree) induces an isomorphism on K(n)_*."""
    equivalent = acyclic_fiber(height, fiber_degree)
    logger.debug("fibre K(Z, %d) at %s: equivalence %s", fiber_degree, height, equivalent)
    return equivalent
