#pragma once

#include "nakascan/data_model.hpp"

namespace nakascan {

enum class TgcMode { DivideByGain, None };

struct TgcPolicy {
    TgcMode mode = TgcMode::DivideByGain;
};

/// Row r scaled by 1/tgc_gain[r] (DivideByGain) or passed through (None).
RfFrame apply_tgc(const RfFrame& frame, const TgcPolicy& policy);

/// Envelope as the magnitude of the per-line analytic signal, computed in
/// the frequency domain. Requires at least 8 axial samples.
EnvelopeImage detect_envelope(const RfFrame& frame);

} // namespace nakascan
