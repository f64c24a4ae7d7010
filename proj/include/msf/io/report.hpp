#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "msf/engine/engine.hpp"
#include "msf/scheme/analysis.hpp"
#include "msf/scheme/properties.hpp"

namespace msf::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "msf-1";

/// Residue for prime fields, digit list (lowest first) otherwise.
Json element_json(const ff::FieldCtx& field, ff::Elem a);
Json vec_json(const ff::FieldCtx& field, const ff::Vec& v);
/// Coefficients low to high as residues; the polynomial must lie over F_p.
Json poly_json(const ff::FieldCtx& fp, const ff::Poly& f);

/// {"kind", "level", "index", "before", "after", "witness"}.
Json event_json(const ff::FieldCtx& field, const engine::Event& ev);
/// One compact event object per line.
std::string event_lines(const ff::FieldCtx& field, const std::vector<engine::Event>& events);

/// FactorResult as the msf-1 object; certificate_file is null when empty.
Json factor_json(const engine::FactorResult& r, const std::string& certificate_file = {});

/// Algebraic digest of a terminal state: field, f, per level the dims and idempotents.
/// With roots (residues of the points), the support scheme is attached in the scheme
/// file format.
Json certificate_json(const engine::SchemeState& st, const std::vector<std::uint64_t>& roots = {});

Json property_json(const scheme::PropertyReport& rep);
Json matchings_json(const std::vector<scheme::Matching>& ms);
Json primitivity_json(const scheme::PrimitivityReport& rep);
Json conjecture_json(const scheme::ConjectureReport& rep);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace msf::io
