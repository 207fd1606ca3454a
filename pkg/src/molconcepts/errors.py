"""Exception hierarchy shared across the package.

Every error raised by library code derives from MolConceptsError so callers
(and the CLI exit-code mapping) can distinguish library failures from bugs.
"""


class MolConceptsError(Exception):
    """Base class for all library errors."""


# --- chem ---------------------------------------------------------------

class SmilesSyntaxError(MolConceptsError):
    """Malformed SMILES: unbalanced rings/brackets/parentheses, unknown element."""


class ValenceError(MolConceptsError):
    """Explicit bonds exceed the standard valence of an atom."""


class UnsupportedDescriptor(MolConceptsError):
    """Descriptor id outside the closed catalog."""


# --- llm gateway --------------------------------------------------------

class TransportError(MolConceptsError):
    """Live network failure after retries."""


class ParseError(MolConceptsError):
    """LLM response does not match the expected response grammar."""


class CacheMiss(MolConceptsError):
    """Replay transport found no transcript for the prompt."""


# --- concept engine -----------------------------------------------------

class NoViableRoute(MolConceptsError):
    """Concept cannot be labeled by any enabled strategy."""


class SandboxError(MolConceptsError):
    """Generated-function execution failed in the sandbox shim."""


class UnknownUnit(MolConceptsError):
    """No conversion rule between the cell unit and the column unit."""


class AllMissing(MolConceptsError):
    """Mean imputation requested on a column with no observed values."""


# --- predictors / selector ----------------------------------------------

class SingularDesign(MolConceptsError):
    """Design matrix rank-deficient beyond repair."""


class PerfectSeparation(MolConceptsError):
    """Logistic fit diverged because the classes are separable."""


class NonFiniteLoss(MolConceptsError):
    """MLP training produced a non-finite loss."""


class SchemaMismatch(MolConceptsError):
    """Prediction rows do not match the model's recorded column order."""


class VariantMismatch(MolConceptsError):
    """Report requested for the wrong model variant."""


# --- eval harness -------------------------------------------------------

class LengthMismatch(MolConceptsError):
    """Metric inputs differ in length."""


class SingleClass(MolConceptsError):
    """AUC-ROC needs both classes present."""


class ConstantVector(MolConceptsError):
    """Pearson r is undefined for a constant input."""


class SchemaError(MolConceptsError):
    """Dataset file missing required columns."""


class IndexOutOfRange(MolConceptsError):
    """Split index outside the dataset row range."""


# --- cli ----------------------------------------------------------------

class ConfigError(MolConceptsError):
    """Invalid or contradictory run configuration."""
