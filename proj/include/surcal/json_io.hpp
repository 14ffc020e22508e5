#pragma once

#include "surcal/expr.hpp"

#include <json.hpp>

namespace surcal {

nlohmann::json nf_to_json(const SurrealNF& x);
nlohmann::json stream_to_json(const TermStream& s, std::size_t truncate);
nlohmann::json ts_to_json(const Transseries& t, std::size_t truncate);
nlohmann::json value_to_json(const Value& v, const RenderOptions& opt);

}  // namespace surcal
