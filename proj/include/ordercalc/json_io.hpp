#pragma once

#include <string>

#include <json.hpp>

#include "ordercalc/cardinals.hpp"
#include "ordercalc/chain.hpp"
#include "ordercalc/codes.hpp"
#include "ordercalc/finite_oracle.hpp"
#include "ordercalc/props.hpp"
#include "ordercalc/topology.hpp"

namespace ordercalc {

using nlohmann::json;

inline json code_to_json(const CodePtr& c) {
    switch (c->kind) {
        case ElementCode::Kind::Nat: return json{{"nat", c->nat}};
        case ElementCode::Kind::Int: return json{{"int", c->iv}};
        case ElementCode::Kind::Rat: return json{{"rat", {c->num, c->den}}};
        case ElementCode::Kind::Cantor: return json{{"cantor", {{"w", c->word}, {"t", c->tail}}}};
        case ElementCode::Kind::Left: return json{{"L", code_to_json(c->x)}};
        case ElementCode::Kind::Right: return json{{"R", code_to_json(c->x)}};
        case ElementCode::Kind::Pair: return json{{"pair", {code_to_json(c->x), code_to_json(c->y)}}};
    }
    throw CodeError("code_to_json: unknown kind");
}

inline CodePtr code_from_json(const json& j) {
    if (j.contains("nat")) return ElementCode::nat_code(j["nat"].get<std::uint64_t>());
    if (j.contains("int")) return ElementCode::int_code(j["int"].get<std::int64_t>());
    if (j.contains("rat"))
        return ElementCode::rat_code(j["rat"][0].get<std::int64_t>(), j["rat"][1].get<std::int64_t>());
    if (j.contains("cantor"))
        return ElementCode::cantor_code(j["cantor"]["w"].get<std::string>(),
                                        j["cantor"]["t"].get<int>());
    if (j.contains("L")) return ElementCode::left(code_from_json(j["L"]));
    if (j.contains("R")) return ElementCode::right(code_from_json(j["R"]));
    if (j.contains("pair"))
        return ElementCode::pair(code_from_json(j["pair"][0]), code_from_json(j["pair"][1]));
    throw CodeError("code_from_json: unrecognized code object");
}

inline json weightset_to_json(const WeightSet& w) {
    json j;
    j["indeterminate"] = w.indeterminate();
    j["exact"] = json::array();
    for (int p : w.exact()) j["exact"].push_back(w.chain()->name(p));
    j["ranges"] = json::array();
    for (auto& [lo, hi] : w.ranges()) j["ranges"].push_back({w.chain()->name(lo), w.chain()->name(hi)});
    if (w.has_continuum_side()) j["exact"].push_back("continuum");
    return j;
}

inline json attrs_to_json(const Attrs& a) {
    json j;
    j["is_empty"] = a.is_empty;
    j["has_min"] = a.has_min;
    j["has_max"] = a.has_max;
    j["left_complete"] = a.left_complete;
    j["right_complete"] = a.right_complete;
    j["dedekind_complete"] = a.dedekind_complete;
    j["dense_jumps"] = a.dense_jumps;
    j["weakly_boolean"] = a.weakly_boolean();
    j["boolean"] = a.boolean();
    j["weight"] = a.weight ? json(a.weight->name()) : json(nullptr);
    j["card"] = a.card ? json(a.card->name()) : json(nullptr);
    j["finite_size"] = a.finite_size ? json(*a.finite_size) : json(nullptr);
    j["w_init"] = weightset_to_json(a.w_init);
    j["w_fin"] = weightset_to_json(a.w_fin);
    j["card_init"] = weightset_to_json(a.card_init);
    j["card_fin"] = weightset_to_json(a.card_fin);
    return j;
}

inline json verdict_to_json(const Verdict& v) {
    json fails = json::array();
    for (auto& f : v.failures)
        fails.push_back({{"condition", f.condition}, {"expected", f.expected}, {"actual", f.actual}});
    return json{{"case", v.case_matched}, {"passed", v.passed}, {"failures", fails}};
}

inline json certificate_to_json(const Certificate& c) {
    json steps = json::array();
    for (auto& s : c.steps)
        steps.push_back({{"d", code_to_json(s.d)},
                         {"partner", code_to_json(s.partner)},
                         {"ok", s.step_ok && s.boundary_ok}});
    return json{{"n", c.n},
                {"steps", steps},
                {"boundary_ok", c.boundary_ok},
                {"pass", c.pass},
                {"verdict", verdict_to_json(c.verdict)},
                {"note",
                 "jump steps certified at prefix scale; limit cuts rest on the "
                 "dedekind_complete flag of the verdict"}};
}

inline json finite_chain_to_json(const FiniteChain& c) {
    json sets = json::array();
    for (auto s : c.sets) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%x", s);
        sets.push_back(std::string(buf));
    }
    return json{{"n", c.n}, {"sets", sets}};
}

inline json iso_report_to_json(const IsoReport& r) {
    json images = json::array();
    for (auto v : r.images) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%x", v);
        images.push_back(std::string(buf));
    }
    return json{{"n", r.n},
                {"s", r.s},
                {"class_size", r.class_size},
                {"expected_size", r.expected_size},
                {"bijective", r.bijective},
                {"pairs_checked", r.pairs_checked},
                {"pair_failures", r.pair_failures},
                {"passed", r.passed},
                {"note", r.note},
                {"images", images}};
}

}  // namespace ordercalc
