"""Power-of-two fast sinusoidal transforms built from AM-style modulation steps.

Eight variants compute the complex DFT, the real DFT and the type-0 DCT and
DST. Each comes with an exact operation meter, and a naive oracle is
provided for checking.
"""
from .accuracy import AccuracyReport, measure_accuracy, ordering_check
from .elaborations import ElaborationId, Phase
from .metering import OpMeter, measure, predicted_cost, predicted_flops, reference_literature_counts
from .oracle import PrecisionMode, naive_cdft, naive_dct, naive_dst, naive_rdft
from .signals import Domain, SignalBuffer, TransformKind, TransformSpec, signal_type
from .tables import TableMode, TrigTable, build_trig_table
from .variants import FunctionId, VariantId, VariantPlan, base_case, build_plan, execute

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport", "Domain", "ElaborationId", "FunctionId", "OpMeter", "Phase",
    "PrecisionMode", "SignalBuffer", "TableMode", "TransformKind", "TransformSpec",
    "TrigTable", "VariantId", "VariantPlan", "base_case", "build_plan", "build_trig_table",
    "execute", "measure", "measure_accuracy", "naive_cdft", "naive_dct", "naive_dst",
    "naive_rdft", "ordering_check", "predicted_cost", "predicted_flops",
    "reference_literature_counts", "signal_type",
]
