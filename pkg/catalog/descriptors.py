"""
Space descriptors

A SpaceDescriptor names a space together with exactly one description of
its K(n)-homology: an explicit module, a dimension table, a mod-2
cohomology ring (for the spectral sequence), or the structural flags that
connected covers of BO and BU carry.

Flags are licenses, not homology: a cover with an explicit module may also
carry the flag that says which theorem applies to it. A dimension table
means the algebra acts trivially and carries no flags.

Classes:
    SpaceKind: The kinds of space the catalog knows
    Flag: Structural flags on connected covers
    TwistFlavor: Integral or mod-2 twists
    CoverBase: A cover of BO or BU identified with a space of a connective spectrum
    TwistClassEntry: A named twist class
    SpaceDescriptor: Validated catalog entry

Functions:
    whitehead_base: Normalize BO<m> or BU<m> and identify it
    fibre_algebra: K(n)_* of the fibre of a twisted cover
"""

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property

from django.db import models

from catalog.algebras import em_algebra
from catalog.exceptions import CatalogError
from graded.algebra import AlgebraPresentation, GradedDims, Height
from hopf_modules.modules import ModuleOverAlgebra, regular_module, tensor_dims, unit_module
from steenrod.rings import SteenrodRing
from steenrod.standard import sphere_ring

logger = logging.getLogger(__name__)


class SpaceKind(models.TextChoices):
    EM_INTEGRAL = 'em-integral', 'Eilenberg-MacLane space K(Z, q)'
    EM_MOD_P = 'em-mod-p', 'Eilenberg-MacLane space K(Z/k, q)'
    SPHERE = 'sphere', 'Sphere'
    FINITE_COMPLEX = 'finite-complex', 'Finite complex'
    STRUCTURAL_COVER = 'structural-cover', 'Connected cover'
    STEENROD_RING = 'steenrod-ring', 'Mod-2 cohomology ring'


class Flag(models.TextChoices):
    FREE_OVER_A = 'free-over-A', 'Free over the fibre algebra'
    B0_KILLED = 'b0-killed', 'b_0 acts by zero on the unit'
    A0_KILLED = 'a0-killed', 'a_0 acts by zero on the unit'


class TwistFlavor(models.TextChoices):
    INTEGRAL = 'integral', 'Integral class in degree n+2'
    MOD_2 = 'mod-2', 'Mod-2 class in degree n+1'


FAMILIES = ('BO', 'BU', 'synthetic')


@dataclass(frozen=True)
class CoverBase:
    """``family<cover>`` identified with the ``index``-th space of ``spectrum``."""

    family: str
    cover: int
    spectrum: str
    index: int

    @property
    def klw_base(self) -> bool:
        """Whether the space may serve as the base of a Hopf-algebra short exact sequence."""
        return self.index >= (4 if self.spectrum == 'bo' else 2)

    def __str__(self):
        return f"{self.family}<{self.cover}> = {self.spectrum}_{self.index}"


def whitehead_base(m: int, family: str = 'BO') -> CoverBase:
    """Identify the connected cover ``BO<m>`` or ``BU<m>``.

    Covers that kill no new homotopy group are moved up to the next
    distinct one: ``BO<8k+3> = BO<8k+4>``, ``BO<8k+5..7> = BO<8k+8>`` and
    ``BU<2k+1> = BU<2k+2>``.

    Raises
    ------
    CatalogError
        For an unknown family or a negative cover degree.
    """
    if family == 'BU':
        if m < 1:
            raise CatalogError({"cover": f"BU<{m}> is not a connected cover"})
        cover = m + m % 2
        return CoverBase('BU', cover, 'bu', cover)
    if family != 'BO':
        raise CatalogError({"family": f"no Whitehead tower for '{family}'"})
    if m < 0:
        raise CatalogError({"cover": f"BO<{m}> is not a connected cover"})
    residue = m % 8
    if residue in (3, 5, 6, 7):
        normalized = m + (1 if residue == 3 else 8 - residue)
        logger.debug("BO<%d> is BO<%d>", m, normalized)
        m = normalized
    spectrum, offset = {0: ('bo', 0), 1: ('BO', 1), 2: ('BSO', 2), 4: ('BSpin', 4)}[m % 8]
    return CoverBase('BO', m, spectrum, m - offset)


def fibre_algebra(height: Height, flavor: str, truncation: int = 1) -> AlgebraPresentation:
    """K(n)_* of the fibre of a twisted cover: K(Z, n+1) for integral twists, K(Z/2^J, n) for mod-2 ones."""
    if flavor == TwistFlavor.INTEGRAL:
        return em_algebra(height, None, height.n + 1, truncation)
    if flavor == TwistFlavor.MOD_2:
        return em_algebra(height, 2 ** truncation, height.n)
    raise CatalogError({"flavor": f"flavor must be one of {TwistFlavor.values}, got '{flavor}'"})


@dataclass(frozen=True)
class TwistClassEntry:
    """A named cohomology class usable as a twist.

    ``value`` is a polynomial in the space's cohomology ring, empty when the
    class is only known by name (cover twists).
    """

    name: str
    degree: int
    coefficients: str = 'Z'
    value: str = ''

    def __post_init__(self):
        if self.coefficients not in ('Z', 'Z/2'):
            raise CatalogError({"classes": f"class '{self.name}' has coefficients {self.coefficients}; use Z or Z/2"})
        if self.degree < 1:
            raise CatalogError({"classes": f"class '{self.name}' must have positive degree"})


@dataclass(frozen=True)
class SpaceDescriptor:
    """A validated catalog entry.

    Which optional fields are set depends on ``kind``:

    ==================  ===========================================
    em-integral         ``degree`` (q)
    em-mod-p            ``degree`` (q), ``order`` (k in Z/k)
    sphere              ``degree`` (dimension)
    finite-complex      ``ring``, ``ring_name``
    steenrod-ring       ``ring``
    structural-cover    ``family``, ``cover``, ``flavor``, ``flags``, ``module``, ``dims``
    ==================  ===========================================
    """

    name: str
    kind: str
    height: Height
    truncation: int = 1
    description: str = ''
    degree: int | None = None
    order: int | None = None
    ring: SteenrodRing | None = None
    ring_name: str = ''
    family: str = ''
    cover: int | None = None
    flavor: str = ''
    flags: tuple[str, ...] = ()
    module: ModuleOverAlgebra | None = None
    dims: GradedDims | None = None
    classes: tuple[TwistClassEntry, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "flags", tuple(self.flags))
        object.__setattr__(self, "classes", tuple(self.classes))
        if self.kind not in SpaceKind.values:
            raise CatalogError({"kind": f"unknown kind '{self.kind}'"})
        if self.truncation < 1:
            raise CatalogError({"truncation": f"truncation must be at least 1, got {self.truncation}"})
        names = [entry.name for entry in self.classes]
        if len(set(names)) != len(names):
            raise CatalogError({"classes": f"duplicate class names in {names}"})

        allowed = {
            SpaceKind.EM_INTEGRAL: {'degree'},
            SpaceKind.EM_MOD_P: {'degree', 'order'},
            SpaceKind.SPHERE: {'degree'},
            SpaceKind.FINITE_COMPLEX: {'ring', 'ring_name'},
            SpaceKind.STEENROD_RING: {'ring'},
            SpaceKind.STRUCTURAL_COVER: {'family', 'cover', 'flavor', 'flags', 'module', 'dims'},
        }[self.kind]
        for name in ('degree', 'order', 'ring', 'ring_name', 'family', 'cover', 'flavor', 'flags', 'module', 'dims'):
            if name not in allowed and getattr(self, name) not in (None, '', ()):
                raise CatalogError({name: f"not allowed on a {self.kind} entry"})

        getattr(self, f"_check_{self.kind.replace('-', '_')}")()

    # -- per-kind checks ------------------------------------------------

    def _check_em_integral(self):
        if self.degree is None:
            raise CatalogError({"degree": "an Eilenberg-MacLane entry needs its degree q"})
        # raises outside the computed range
        self.algebra

    def _check_em_mod_p(self):
        if self.order is None:
            raise CatalogError({"order": "a K(Z/k, q) entry needs the group order k"})
        self._check_em_integral()

    def _check_sphere(self):
        if self.degree is None or self.degree < 1:
            raise CatalogError({"degree": f"sphere dimension must be positive, got {self.degree}"})

    def _check_finite_complex(self):
        if self.ring is None:
            raise CatalogError({"ring": "a finite complex needs its cohomology ring"})
        if not self.ring.is_finite:
            raise CatalogError({"ring": f"ring {self.ring} is not finite"})

    def _check_steenrod_ring(self):
        if self.ring is None:
            raise CatalogError({"ring": "a ring entry needs generators"})

    def _check_structural_cover(self):
        if self.height.p != 2:
            raise CatalogError({"prime": "connected covers are catalogued at p = 2 only"})
        if self.flavor not in TwistFlavor.values:
            raise CatalogError({"flavor": f"flavor must be one of {TwistFlavor.values}, got '{self.flavor}'"})
        if self.family not in FAMILIES:
            raise CatalogError({"family": f"family must be one of {FAMILIES}, got '{self.family}'"})
        unknown = set(self.flags) - set(Flag.values)
        if unknown:
            raise CatalogError({"flags": f"unknown flag(s) {sorted(unknown)}"})
        if not self.flags and self.module is None and self.dims is None:
            raise CatalogError({"flags": "a cover needs structural flags, an explicit module or a dims table"})
        if self.dims is not None:
            if self.module is not None:
                raise CatalogError({"dims": "give either a module or a dims table, not both"})
            if self.flags:
                raise CatalogError({"dims": "a dims table has trivial action and takes no flags"})
            if self.dims.height != self.height:
                raise CatalogError({"dims": f"dims over {self.dims.height}, entry at {self.height}"})
        if self.module is not None and self.module.algebra != self.algebra:
            raise CatalogError({"module": f"module is over {self.module.algebra}, expected {self.algebra}"})
        if self.family == 'synthetic':
            if self.numeric_module is None:
                raise CatalogError({"module": "a synthetic cover needs an explicit module or a dims table"})
            if self.cover is not None:
                raise CatalogError({"cover": "a synthetic cover has no Whitehead degree"})
            return
        if self.cover is None:
            raise CatalogError({"cover": f"a {self.family} cover needs its degree"})
        base = self.base
        for flag in self.flags:
            if not self._licensed(flag, base):
                raise CatalogError({"flags": f"'{flag}' is not licensed for {base} with {self.flavor} twists"})

    def _licensed(self, flag: str, base: CoverBase) -> bool:
        if flag == Flag.FREE_OVER_A:
            return base.klw_base
        if flag == Flag.B0_KILLED:
            return self.flavor == TwistFlavor.INTEGRAL and base.family == 'BO' and base.cover == 4
        return self.flavor == TwistFlavor.MOD_2 and base.family == 'BO' and base.cover == 2

    # -- derived data ---------------------------------------------------

    @cached_property
    def algebra(self) -> AlgebraPresentation | None:
        """The Ravenel-Wilson algebra of an EM entry, or the fibre algebra a cover is a module over."""
        if self.kind == SpaceKind.EM_INTEGRAL:
            return em_algebra(self.height, None, self.degree, self.truncation)
        if self.kind == SpaceKind.EM_MOD_P:
            return em_algebra(self.height, self.order, self.degree)
        if self.kind == SpaceKind.STRUCTURAL_COVER:
            return fibre_algebra(self.height, self.flavor, self.truncation)
        return None

    @property
    def base(self) -> CoverBase | None:
        if self.kind != SpaceKind.STRUCTURAL_COVER or self.family == 'synthetic':
            return None
        return whitehead_base(self.cover, self.family)

    @property
    def cohomology(self) -> SteenrodRing | None:
        """Mod-2 cohomology ring, for entries that are finite complexes."""
        if self.kind == SpaceKind.SPHERE:
            return sphere_ring(self.degree)
        return self.ring

    @property
    def homology(self):
        """The one homology representation: a module, a GradedDims, a ring or the flags."""
        if self.kind in (SpaceKind.EM_INTEGRAL, SpaceKind.EM_MOD_P):
            return regular_module(self.algebra)
        if self.kind == SpaceKind.SPHERE:
            return GradedDims(self.height, {0: 1, self.degree: 1})
        if self.kind in (SpaceKind.FINITE_COMPLEX, SpaceKind.STEENROD_RING):
            return self.ring
        if self.module is not None:
            return self.module
        return self.dims if self.dims is not None else self.flags

    @property
    def numeric_module(self) -> ModuleOverAlgebra | None:
        """The cover's homology as a module: the explicit one, or trivial action on ``dims``."""
        if self.module is not None:
            return self.module
        if self.dims is not None:
            return tensor_dims(unit_module(self.algebra), self.dims)
        return None

    def has_flag(self, flag: str) -> bool:
        return flag in self.flags

    def twist_class(self, name: str) -> TwistClassEntry:
        for entry in self.classes:
            if entry.name == name:
                return entry
        raise CatalogError({"classes": f"'{self.name}' has no class named '{name}'"})

    def at_height(self, n: int) -> "SpaceDescriptor":
        """The same entry read at another height (same prime)."""
        if n == self.height.n:
            return self
        if self.module is not None or self.dims is not None:
            raise CatalogError({"height": f"'{self.name}' carries explicit homology at height {self.height.n}"})
        return replace(self, height=Height(self.height.p, n))

    def __str__(self):
        return f"{self.name} ({self.kind}, {self.height})"
