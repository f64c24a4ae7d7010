#include "msf/io/report.hpp"

#include <sstream>

#include "msf/scheme/collection.hpp"

namespace msf::io {

Json element_json(const ff::FieldCtx& field, ff::Elem a) {
  if (field.degree() == 1) return field.to_int(a);
  return field.digits(a);
}

Json vec_json(const ff::FieldCtx& field, const ff::Vec& v) {
  Json out = Json::array();
  for (auto a : v) out.push_back(element_json(field, a));
  return out;
}

Json poly_json(const ff::FieldCtx& fp, const ff::Poly& f) {
  Json out = Json::array();
  for (auto c : ff::poly_to_ints(fp, f)) out.push_back(c);
  return out;
}

Json event_json(const ff::FieldCtx& field, const engine::Event& ev) {
  using engine::EventKind;
  Json w = Json::object();
  switch (ev.kind) {
    case EventKind::Init:
    case EventKind::Antisym:
      w["sigma"] = ev.sigma;
      break;
    case EventKind::Compat:
      w["slot"] = ev.slot;
      w["lower"] = ev.source;
      break;
    case EventKind::Regular:
      w["upper"] = ev.source;
      w["slot"] = ev.slot;
      w["count"] = ev.value;
      break;
    case EventKind::Invariant:
      w["source"] = ev.source;
      w["transposition"] = {ev.slot, ev.slot + 1};
      break;
    case EventKind::Matching:
      w["upper"] = ev.source;
      w["slots"] = {ev.slot, ev.slot2};
      break;
    case EventKind::Tower:
      w["components"] = ev.value;
      w["zero_divisor"] = vec_json(field, ev.element);
      break;
    case EventKind::Factor:
      w["factors"] = ev.value;
      break;
  }
  Json j;
  j["kind"] = engine::to_string(ev.kind);
  j["level"] = ev.level;
  j["index"] = ev.index;
  j["before"] = ev.before;
  j["after"] = ev.after;
  j["witness"] = std::move(w);
  return j;
}

std::string event_lines(const ff::FieldCtx& field, const std::vector<engine::Event>& events) {
  std::string out;
  for (const auto& ev : events) {
    out += event_json(field, ev).dump();
    out += '\n';
  }
  return out;
}

Json factor_json(const engine::FactorResult& r, const std::string& certificate_file) {
  const auto fp = ff::FieldCtx::prime(r.p);
  Json j;
  j["schema"] = kSchema;
  j["input"] = {{"p", r.p}, {"f", poly_json(fp, r.input)}};
  j["status"] = engine::to_string(r.status);
  Json fs = Json::array();
  for (const auto& g : r.factors) fs.push_back(poly_json(fp, g));
  j["factors"] = std::move(fs);
  j["remainder"] = poly_json(fp, r.remainder);
  j["complete"] = r.complete;
  j["strategy"] = engine::to_string(r.strategy);
  j["levels"] = r.levels;
  j["field"] = r.field;
  j["events"] = r.events.size();
  if (r.certificate.empty()) {
    j["certificate"] = nullptr;
  } else {
    j["certificate"] = {{"dims", r.certificate}};
  }
  j["certificate_file"] = certificate_file.empty() ? Json(nullptr) : Json(certificate_file);
  j["diagnostic"] = r.diagnostic;
  return j;
}

Json certificate_json(const engine::SchemeState& st, const std::vector<std::uint64_t>& roots) {
  const auto& field = st.field();
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "certificate";
  j["field"] = field.describe();
  j["f"] = vec_json(field, st.poly().c);
  j["n"] = st.n();
  j["m"] = st.m();
  Json levels = Json::array();
  for (unsigned s = 1; s <= st.m(); ++s) {
    Json ideals = Json::array();
    for (const auto& part : st.level(s)) {
      ideals.push_back({{"dim", part.ideal.dim}, {"idempotent", vec_json(field, part.ideal.e)}});
    }
    levels.push_back({{"level", s}, {"dims", st.dims(s)}, {"ideals", std::move(ideals)}});
  }
  j["levels"] = std::move(levels);
  if (!roots.empty()) {
    j["roots"] = roots;
    j["support_scheme"] = scheme::format_scheme(engine::support_scheme(st, roots));
  }
  return j;
}

Json property_json(const scheme::PropertyReport& rep) {
  Json levels = Json::array();
  for (const auto& l : rep.levels) {
    levels.push_back({{"level", l.level},
                      {"colors", l.colors},
                      {"compatible", l.compatible},
                      {"regular", l.regular},
                      {"invariant", l.invariant},
                      {"symmetric", l.symmetric},
                      {"antisymmetric", l.antisymmetric}});
  }
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "properties";
  j["scheme"] = rep.is_scheme();
  j["compatible"] = rep.compatible();
  j["regular"] = rep.regular();
  j["invariant"] = rep.invariant();
  j["homogeneous"] = rep.homogeneous;
  j["symmetric"] = rep.symmetric();
  j["antisymmetric"] = rep.antisymmetric();
  j["levels"] = std::move(levels);
  return j;
}

Json matchings_json(const std::vector<scheme::Matching>& ms) {
  Json list = Json::array();
  for (const auto& m : ms) {
    list.push_back({{"level", m.level}, {"color", m.color}, {"slots", {m.slot_i, m.slot_j}}});
  }
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "matchings";
  j["count"] = ms.size();
  j["matchings"] = std::move(list);
  return j;
}

Json primitivity_json(const scheme::PrimitivityReport& rep) {
  Json list = Json::array();
  for (const auto& e : rep.entries) {
    list.push_back({{"level", e.level},
                    {"color", e.color},
                    {"lower", e.lower},
                    {"components", e.components},
                    {"vertices", e.vertices},
                    {"bases", e.bases}});
  }
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "primitivity";
  j["primitive"] = rep.primitive;
  j["colors"] = std::move(list);
  return j;
}

Json conjecture_json(const scheme::ConjectureReport& rep) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = "conjecture-search";
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["seed"] = rep.seed;
  j["budget"] = rep.budget;
  j["seeds_tried"] = rep.seeds_tried;
  if (rep.nonexistence) {
    const auto& c = *rep.nonexistence;
    j["nonexistence"] = {{"r", c.r},
                         {"counting", c.counting},
                         {"exhaustive", c.exhaustive},
                         {"search_space", c.search_space},
                         {"seeds_checked", c.seeds_checked},
                         {"candidates", c.candidates},
                         {"complete", c.complete()}};
    if (c.complete()) {
      // an antisymmetric m-scheme truncates to an antisymmetric r-scheme for r <= m
      j["message"] = "no homogeneous antisymmetric " + std::to_string(rep.m) + "-schemes exist on " +
                     std::to_string(rep.n) + " points";
    }
  } else {
    j["nonexistence"] = nullptr;
  }
  Json list = Json::array();
  for (const auto& inst : rep.instances) {
    list.push_back({{"source", inst.source}, {"colors", inst.colors}, {"matchings", inst.matchings}});
  }
  j["instances"] = std::move(list);
  j["counterexample"] = rep.counterexample;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace msf::io
