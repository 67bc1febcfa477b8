#pragma once

#include <ostream>
#include <string>

#include "bphz/roughsim/bound_probe.hpp"
#include "bphz/roughsim/wong_zakai.hpp"

namespace bphz::roughsim {

/// Shortest decimal that round-trips, '.' separator, independent of locale.
std::string format_double(double v);

/// eps,path,I_uncorr,I_corr,I_model,I_ito
void write_wz_csv(std::ostream& out, const WZResult& r);
/// eps,rms_uncorr,rms_corr,c_eps,rms_model
void write_wz_summary_csv(std::ostream& out, const WZResult& r);
/// tau,lambda,eps,rms_pairing
void write_bounds_csv(std::ostream& out, const ProbeResult& r);
/// tau,log_c,lambda_exponent,eps_exponent
void write_bounds_fit_csv(std::ostream& out, const ProbeResult& r);

}  // namespace bphz::roughsim
