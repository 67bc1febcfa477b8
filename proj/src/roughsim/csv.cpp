#include "bphz/roughsim/csv.hpp"

#include <charconv>
#include <cmath>

namespace bphz::roughsim {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_wz_csv(std::ostream& out, const WZResult& r) {
  out << "eps,path,I_uncorr,I_corr,I_model,I_ito\n";
  for (const auto& x : r.records)
    out << format_double(x.eps) << ',' << x.path << ',' << format_double(x.uncorrected) << ','
        << format_double(x.corrected) << ',' << format_double(x.model) << ',' << format_double(x.ito) << '\n';
}

void write_wz_summary_csv(std::ostream& out, const WZResult& r) {
  out << "eps,rms_uncorr,rms_corr,c_eps,rms_model\n";
  for (const auto& s : r.summary)
    out << format_double(s.eps) << ',' << format_double(s.rms_uncorrected) << ',' << format_double(s.rms_corrected)
        << ',' << format_double(s.c_eps) << ',' << format_double(s.rms_model) << '\n';
}

void write_bounds_csv(std::ostream& out, const ProbeResult& r) {
  out << "tau,lambda,eps,rms_pairing\n";
  for (const auto& x : r.rows)
    out << x.tau << ',' << format_double(x.lambda) << ',' << format_double(x.eps) << ',' << format_double(x.rms) << '\n';
}

void write_bounds_fit_csv(std::ostream& out, const ProbeResult& r) {
  out << "tau,log_c,lambda_exponent,eps_exponent\n";
  for (const auto& f : r.fits)
    out << f.tau << ',' << format_double(f.log_c) << ',' << format_double(f.lambda_exponent) << ','
        << format_double(f.eps_exponent) << '\n';
}

}  // namespace bphz::roughsim
