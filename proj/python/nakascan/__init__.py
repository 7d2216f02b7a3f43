from ._core import (
    AlphaComponents,
    NakagamiParams,
    derive_alpha_set,
    estimate_nakagami,
    morphometric_features,
    nakagami_cdf,
    nakagami_pdf,
    roc_auc,
    sample_nakagami_envelope,
)

__all__ = [
    "AlphaComponents",
    "NakagamiParams",
    "derive_alpha_set",
    "estimate_nakagami",
    "morphometric_features",
    "nakagami_cdf",
    "nakagami_pdf",
    "roc_auc",
    "sample_nakagami_envelope",
]
