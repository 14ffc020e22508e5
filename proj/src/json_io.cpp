#include "surcal/json_io.hpp"

namespace surcal {

using nlohmann::json;

nlohmann::json nf_to_json(const SurrealNF& x) {
    json terms = json::array();
    for (const auto& t : x.terms())
        terms.push_back({{"exp", nf_to_json(t.exponent)}, {"coeff", t.coeff.str()}});
    return {{"kind", "normal-form"}, {"terms", terms}};
}

nlohmann::json stream_to_json(const TermStream& s, std::size_t truncate) {
    json terms = json::array();
    std::size_t i = 0;
    for (; i < truncate; ++i) {
        auto t = s.term(i);
        if (!t) break;
        terms.push_back({{"exp", nf_to_json(t->exponent)}, {"coeff", t->coeff.str()}});
    }
    bool truncated = static_cast<bool>(s.term(i));
    return {{"kind", "stream"}, {"terms", terms}, {"truncated", truncated}};
}

nlohmann::json ts_to_json(const Transseries& t, std::size_t truncate) {
    json gens = json::array();
    for (std::size_t i = 0; i < t.gens.lambda.size(); ++i)
        gens.push_back({{"lambda", rational_str(t.gens.lambda[i])},
                        {"beta", rational_str(t.gens.beta[i])}});
    auto terms = ts_terms(t, truncate + 1);
    json arr = json::array();
    for (std::size_t i = 0; i < terms.size() && i < truncate; ++i) {
        const auto& [mono, c] = terms[i];
        arr.push_back({{"k", mono.k}, {"l", mono.l}, {"m", mono.m}, {"coeff", c.str()}});
    }
    return {{"kind", "transseries"},
            {"generators", gens},
            {"terms", arr},
            {"truncated", terms.size() > truncate}};
}

nlohmann::json value_to_json(const Value& v, const RenderOptions& opt) {
    if (const auto* nf = std::get_if<SurrealNF>(&v)) return nf_to_json(*nf);
    if (const auto* st = std::get_if<TermStream>(&v))
        return stream_to_json(*st, opt.truncate);
    if (const auto* ts = std::get_if<Transseries>(&v)) return ts_to_json(*ts, opt.truncate);
    if (const auto* ex = std::get_if<SurrealExpansion>(&v)) {
        json groups = json::array();
        for (const auto& g : *ex)
            groups.push_back({{"exp_arg", nf_to_json(g.exp_arg)},
                              {"factor", g.factor.str()},
                              {"series", stream_to_json(g.series, opt.truncate)}});
        return {{"kind", "expansion"}, {"groups", groups}};
    }
    const auto& iv = std::get<EiInterval>(v);
    return {{"kind", "interval"},
            {"lo", iv.lo},
            {"hi", iv.hi},
            {"midpoint", iv.midpoint}};
}

}  // namespace surcal
