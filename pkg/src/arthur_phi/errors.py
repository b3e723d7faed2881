"""Exception hierarchy.

Every error carries an ``exit_code`` so the CLI can map failures onto its
fixed contract: 1 for a violated identity, 2 for bad input, 3 for a
computation the input system cannot support.
"""


class ArthurPhiError(Exception):
    exit_code = 2


class InputError(ArthurPhiError):
    exit_code = 2


class IdentityFailure(ArthurPhiError):
    exit_code = 1


class CapabilityError(ArthurPhiError):
    exit_code = 3


class ParseError(InputError):
    pass


class ValidationError(InputError):
    pass


class DatumError(ValidationError):
    """A root datum failed validation.

    ``violations`` lists ``(code, message)`` pairs, one per broken invariant.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(f"{code}: {msg}" for code, msg in self.violations)
        super().__init__(text or "invalid root datum")

    @property
    def codes(self):
        return [code for code, _ in self.violations]


class IrregularCharacter(InputError):
    pass


class IrregularElement(InputError):
    pass


class NotDominant(InputError):
    pass


class NotIntegral(InputError):
    pass


class Lambda0NotInDualCone(InputError):
    pass


class DegenerateProjection(InputError):
    pass


class IdentityViolated(IdentityFailure):
    pass


class RecursionInconsistent(IdentityFailure):
    pass


class SimpleTransitivityFailure(IdentityFailure):
    pass


class MinusOneNotInWeylGroup(CapabilityError):
    pass


class NonIntegralQ(CapabilityError):
    pass


class WeylCapExceeded(CapabilityError):
    pass


class ArrangementCapExceeded(CapabilityError):
    pass
