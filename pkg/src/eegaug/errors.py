"""Exception hierarchy shared across the package."""


class EegAugError(Exception):
    """Base class for all eegaug errors."""


class ConfigError(EegAugError):
    """A configuration value violates its constraints."""


class InputError(EegAugError):
    """A runtime input (signal, batch, labels, ...) is invalid."""


class DataFormatError(EegAugError):
    """A binary file (ETD1 dataset, ECN1 checkpoint) cannot be parsed."""


class NumericError(EegAugError):
    """A computation produced or received non-finite values."""
