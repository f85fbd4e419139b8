#include "aidrely/scenario_json.hpp"

#include <initializer_list>
#include <string>

namespace aidrely {

namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(ValidationReport& report) : report_(report) {}

  void add(std::string constraint, std::string path, std::string value, std::string allowed) {
    report_.violations.push_back({std::move(constraint), std::move(path), std::move(value), std::move(allowed)});
  }

  const json* object(const json& parent, const std::string& key, const std::string& path) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      add("required_field", path, "<missing>", "object");
      return nullptr;
    }
    if (!it->is_object()) {
      add("type", path, it->dump(), "object");
      return nullptr;
    }
    return &*it;
  }

  void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : obj.items()) {
      bool found = false;
      for (auto k : known) found = found || k == key;
      if (!found) add("unknown_field", prefix.empty() ? key : prefix + "." + key, value.dump(), "not accepted");
    }
  }

  std::optional<Probability> probability(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      add("required_field", path, "<missing>", "number in [0, 1]");
      return std::nullopt;
    }
    if (!it->is_number()) {
      add("type", path, it->dump(), "number in [0, 1]");
      return std::nullopt;
    }
    const double v = it->get<double>();
    auto p = Probability::try_make(v);
    if (!p) add("probability_range", path, it->dump(), "[0, 1]");
    return p;
  }

  std::optional<std::string> type_tag(const json& obj, const std::string& path) {
    const auto it = obj.find("type");
    if (it == obj.end()) {
      add("required_field", path + ".type", "<missing>", "string");
      return std::nullopt;
    }
    if (!it->is_string()) {
      add("type", path + ".type", it->dump(), "string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

 private:
  ValidationReport& report_;
};

std::optional<ReliancePolicy> read_policy(Reader& r, const json& obj) {
  const auto tag = r.type_tag(obj, "policy");
  if (!tag) return std::nullopt;
  const auto kind = policy_kind_from_string(*tag);
  if (!kind) {
    r.add("unknown_variant", "policy.type", json(*tag).dump(),
          "routine_accept | routine_ignore | indiscriminate | discriminating | self_gated");
    return std::nullopt;
  }
  switch (*kind) {
    case PolicyKind::kRoutineAccept:
      r.reject_unknown(obj, "policy", {"type"});
      return policy::RoutineAccept{};
    case PolicyKind::kRoutineIgnore:
      r.reject_unknown(obj, "policy", {"type"});
      return policy::RoutineIgnore{};
    case PolicyKind::kIndiscriminate: {
      r.reject_unknown(obj, "policy", {"type", "p_accept"});
      const auto p = r.probability(obj, "p_accept", "policy.p_accept");
      if (!p) return std::nullopt;
      return policy::Indiscriminate{*p};
    }
    case PolicyKind::kDiscriminating: {
      r.reject_unknown(obj, "policy", {"type", "p_accept_given_correct", "p_accept_given_wrong"});
      const auto ac = r.probability(obj, "p_accept_given_correct", "policy.p_accept_given_correct");
      const auto aw = r.probability(obj, "p_accept_given_wrong", "policy.p_accept_given_wrong");
      if (!ac || !aw) return std::nullopt;
      return policy::Discriminating{*ac, *aw};
    }
    case PolicyKind::kSelfGated: {
      r.reject_unknown(obj, "policy", {"type", "p_ignore_given_user_correct", "p_use_given_user_wrong"});
      const auto gc = r.probability(obj, "p_ignore_given_user_correct", "policy.p_ignore_given_user_correct");
      const auto gw = r.probability(obj, "p_use_given_user_wrong", "policy.p_use_given_user_wrong");
      if (!gc || !gw) return std::nullopt;
      return policy::SelfGated{*gc, *gw};
    }
  }
  return std::nullopt;
}

std::optional<DependencyModel> read_dependency(Reader& r, const json& obj) {
  const auto tag = r.type_tag(obj, "dependency");
  if (!tag) return std::nullopt;
  if (*tag == "independent") {
    r.reject_unknown(obj, "dependency", {"type"});
    return dependency::Independent{};
  }
  if (*tag == "dominant") {
    r.reject_unknown(obj, "dependency", {"type"});
    return dependency::Dominant{};
  }
  if (*tag == "joint") {
    r.reject_unknown(obj, "dependency", {"type", "p_both_correct"});
    const auto p = r.probability(obj, "p_both_correct", "dependency.p_both_correct");
    if (!p) return std::nullopt;
    return dependency::Joint{*p};
  }
  r.add("unknown_variant", "dependency.type", json(*tag).dump(), "independent | joint | dominant");
  return std::nullopt;
}

}  // namespace

ScenarioValidation validate_scenario(const nlohmann::json& raw) {
  ScenarioValidation out;
  Reader r(out.report);

  if (!raw.is_object()) {
    r.add("type", "<root>", raw.dump(), "object");
    return out;
  }
  r.reject_unknown(raw, "", {"aid", "user", "policy", "dependency", "degradation_mode"});

  std::optional<Probability> pa, pu, pr;
  if (const auto* aid = r.object(raw, "aid", "aid")) {
    r.reject_unknown(*aid, "aid", {"p_advice_correct"});
    pa = r.probability(*aid, "p_advice_correct", "aid.p_advice_correct");
  }
  if (const auto* user = r.object(raw, "user", "user")) {
    r.reject_unknown(*user, "user", {"p_unaided_correct", "p_post_reject_correct"});
    pu = r.probability(*user, "p_unaided_correct", "user.p_unaided_correct");
    pr = r.probability(*user, "p_post_reject_correct", "user.p_post_reject_correct");
  }
  std::optional<ReliancePolicy> pol;
  if (const auto* obj = r.object(raw, "policy", "policy")) pol = read_policy(r, *obj);
  std::optional<DependencyModel> dep;
  if (const auto* obj = r.object(raw, "dependency", "dependency")) dep = read_dependency(r, *obj);

  std::optional<DegradationMode> mode;
  if (const auto it = raw.find("degradation_mode"); it != raw.end()) {
    if (!it->is_string()) {
      r.add("type", "degradation_mode", it->dump(), "fixed_rate | conditional_from_joint");
    } else if (!(mode = degradation_mode_from_string(it->get<std::string>()))) {
      r.add("unknown_variant", "degradation_mode", it->dump(), "fixed_rate | conditional_from_joint");
    }
  }

  if (!pa || !pu || !pr || !pol || !dep) return out;

  const AidProfile aid{*pa};
  const UserProfile user{*pu, *pr};
  auto cross = check_cross_fields(aid, user, *pol, *dep);
  for (auto& v : cross.violations) out.report.violations.push_back(std::move(v));
  for (auto& w : cross.warnings) out.report.warnings.push_back(std::move(w));
  if (out.report.ok()) out.scenario = make_scenario(aid, user, *pol, *dep, mode);
  return out;
}

Scenario scenario_from_json(const nlohmann::json& raw) {
  auto result = validate_scenario(raw);
  if (!result.scenario) throw ValidationError(std::move(result.report));
  return std::move(*result.scenario);
}

nlohmann::json to_json(const Scenario& s) {
  json policy_doc = {{"type", std::string(to_string(s.policy_kind()))}};
  if (const auto* p = std::get_if<policy::Indiscriminate>(&s.policy())) {
    policy_doc["p_accept"] = p->p_accept.value();
  } else if (const auto* d = std::get_if<policy::Discriminating>(&s.policy())) {
    policy_doc["p_accept_given_correct"] = d->p_accept_given_correct.value();
    policy_doc["p_accept_given_wrong"] = d->p_accept_given_wrong.value();
  } else if (const auto* g = std::get_if<policy::SelfGated>(&s.policy())) {
    policy_doc["p_ignore_given_user_correct"] = g->p_ignore_given_user_correct.value();
    policy_doc["p_use_given_user_wrong"] = g->p_use_given_user_wrong.value();
  }

  json dep_doc = {{"type", std::string(dependency_name(s.dependency()))}};
  if (const auto* j = std::get_if<dependency::Joint>(&s.dependency())) {
    dep_doc["p_both_correct"] = j->p_both_correct.value();
  }

  return {
      {"aid", {{"p_advice_correct", s.aid().p_advice_correct.value()}}},
      {"user",
       {{"p_unaided_correct", s.user().p_unaided_correct.value()},
        {"p_post_reject_correct", s.user().p_post_reject_correct.value()}}},
      {"policy", std::move(policy_doc)},
      {"dependency", std::move(dep_doc)},
      {"degradation_mode", std::string(to_string(s.degradation_mode()))},
  };
}

}  // namespace aidrely
