class PinrepError(Exception):
    pass


class EnclosureTooWide(PinrepError):
    """A continued-fraction prefix is too short to certify the requested quantity."""


class ZeroGap(PinrepError):
    """Some n*alpha is an integer, so a bound that divides by <n alpha> is void."""


class HypothesisFails(PinrepError):
    """Input violates the hypothesis of the lemma being applied."""


class NoWitness(PinrepError):
    """The avoidance hypothesis holds but no q < n has <q x> < 1/n.

    Happens exactly when x = r/n in lowest terms: the points kx + y are then
    equally spaced with gap 1/n, and every q < n has <q x> >= 1/n.
    """


class OutOfDomain(PinrepError, ValueError):
    pass


class WindowTooSmall(PinrepError, ValueError):
    pass


class EvenLength(PinrepError, ValueError):
    pass


class ZeroRadius(PinrepError):
    """An orbit point sits exactly on a partition boundary (or on the margin)."""


class ConfigError(PinrepError, ValueError):
    pass
