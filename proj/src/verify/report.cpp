#include "verify/report.hpp"

#include <cmath>

namespace geomom::verify {

void settle_verdict(VerificationReport& rep, std::optional<double> required_order,
                    double order_band) {
  bool ok = rep.final_residual() <= rep.tolerance;
  if (ok && required_order && !rep.at_floor && rep.residuals.size() >= 3) {
    ok = rep.convergence_order &&
         std::fabs(*rep.convergence_order - *required_order) <= order_band;
  }
  rep.pass = ok;
}

Json VerificationReport::to_json() const {
  Json j = Json::object();
  j.set("check", Json::string(check));
  j.set("chart", Json::string(chart));
  Json cfg = Json::object();
  for (const auto& [k, v] : config) cfg.set(k, v);
  j.set("config", std::move(cfg));
  Json res = Json::array();
  for (const auto& r : residuals) {
    Json e = Json::object();
    e.set("grid", Json::string(r.grid));
    e.set("value", Json::number(r.value));
    res.push(std::move(e));
  }
  j.set("residuals", std::move(res));
  j.set("convergence_order",
        convergence_order ? Json::number(*convergence_order) : Json::null());
  j.set("tolerance", Json::number(tolerance));
  j.set("verdict", Json::string(pass ? "pass" : "fail"));
  return j;
}

Json reports_to_json(const std::vector<VerificationReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push(r.to_json());
  return arr;
}

} // namespace geomom::verify
