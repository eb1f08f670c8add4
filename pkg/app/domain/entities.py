"""Domain enumerations shared by the algebra, pencil and criterion modules."""

from enum import Enum


class StabilizerClass(Enum):
    """Isomorphism classes a subregular stabilizer can fall into."""

    ABELIAN = "abelian"
    B2_PLUS_ABELIAN = "b2_plus_abelian"
    HEISENBERG_PLUS_ABELIAN = "heisenberg_plus_abelian"
    OTHER = "other"

    @property
    def display_name(self) -> str:
        """Human-readable display name."""
        names = {
            StabilizerClass.ABELIAN: "Abelian",
            StabilizerClass.B2_PLUS_ABELIAN: "b2 + Abelian",
            StabilizerClass.HEISENBERG_PLUS_ABELIAN: "Heisenberg + Abelian",
            StabilizerClass.OTHER: "Other",
        }
        return names[self]

    def is_listed(self) -> bool:
        """One of the three classes a smooth subregular stabilizer may have."""
        return self is not StabilizerClass.OTHER


class GeneratorKind(Enum):
    """Which argument-shift subalgebra a generator set spans."""

    CLASSICAL = "classical"
    EXTENDED = "extended"

    @property
    def display_name(self) -> str:
        return self.value.title()


class ScalarKind(Enum):
    """Arithmetic a point or matrix is carried in."""

    EXACT = "exact"
    NUMERIC = "numeric"

    def is_exact(self) -> bool:
        return self is ScalarKind.EXACT


class SingularBranch(Enum):
    """How the singular set sits in codimension."""

    CODIM_ONE = "codim_one"
    CODIM_TWO = "codim_two"

    @property
    def display_name(self) -> str:
        """Human-readable display name."""
        return "codim 1" if self is SingularBranch.CODIM_ONE else "codim >= 2"
