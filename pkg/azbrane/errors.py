"""Exception hierarchy shared by services, CLI and API."""


class AzbraneError(Exception):
    """Base error. `code` is the stable identifier emitted in error payloads."""

    code = "error"
    exit_code = 1
    status_code = 422

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.code)
        self.detail = detail or self.code

    def to_payload(self) -> dict:
        return {"error": self.code, "detail": self.detail}


class DomainError(AzbraneError):
    """Well-formed input on which the requested computation is undefined."""

    code = "domain_error"


class MalformedInput(AzbraneError):
    """Input that does not match the expected schema."""

    code = "malformed_input"
    exit_code = 2
    status_code = 400


# ====================== Linear algebra ======================
class SpectrumNotSplit(DomainError):
    code = "spectrum_not_split"


class DimensionMismatch(MalformedInput):
    code = "dimension_mismatch"


class SingularMatrix(DomainError):
    code = "singular_matrix"


# ====================== Azumaya points ======================
class ArityMismatch(MalformedInput):
    code = "arity_mismatch"


class NotCommuting(DomainError):
    code = "not_commuting"


# ====================== Higgsing ======================
class SolvabilityViolated(DomainError):
    code = "solvability_violated"


class NonConstantA(DomainError):
    code = "non_constant_a"


class NotASolution(DomainError):
    code = "not_a_solution"


# ====================== Torus branes ======================
class ZeroClass(DomainError):
    code = "zero_class"


class GeometryMismatch(DomainError):
    code = "geometry_mismatch"


class InvalidGeometry(MalformedInput):
    code = "invalid_geometry"


class InvalidTarget(DomainError):
    code = "invalid_target"


class MalformedProfile(MalformedInput):
    code = "malformed_profile"


# ====================== Kahler forms ======================
class NonCommutingImages(DomainError):
    code = "non_commuting_images"


# ====================== Scenarios ======================
class UnknownScenario(MalformedInput):
    code = "unknown_scenario"
