#pragma once

namespace castkit {

/// Two-parameter interfacial heat transfer law h(t) = A * (t/t0)^B.
/// (A, B) is the unknown vector of the inverse problem.
struct IhtcParams {
    double A = 0.0;  ///< magnitude (W/m^2 K)
    double B = 0.0;  ///< time exponent (dimensionless, negative in practice)
    double t0 = 1.0; ///< reference time (s)

    void validate() const;
};

/// Evaluate h(t). Rejects t <= 0 when B < 0 (the law diverges there) and
/// non-finite inputs.
double ihtc_eval(const IhtcParams& params, double t);

} // namespace castkit
