#include "expfam/classical.hpp"

namespace expfam::classical {

MomentTriple moment_report(const FamilyMember& member, const MomentOptions& opts) {
  return moments(member.measure, member.mean, opts);
}

double apply_operator(const FamilyMember& member, const std::function<double(double)>& f, const MomentOptions& opts) {
  return integrate_against(member.measure, f, opts);
}

}  // namespace expfam::classical
