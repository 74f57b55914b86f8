#pragma once

/**
 * @file io.hpp
 * @brief JSON serialization of matrices, reports and classifications.
 *
 * Matrix dumps are a header object followed by the basis and one sparse
 * triplet list [row, col, re, im] per generator, in column-major order.
 * Keys keep their insertion order, so equal inputs give byte-identical text.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "classify.hpp"
#include "compactrep.hpp"
#include "degenrep.hpp"
#include "errors.hpp"
#include "gtbasis.hpp"
#include "qarith.hpp"
#include "verify.hpp"

namespace qdegen {

using Json = nlohmann::ordered_json;

inline constexpr const char* dump_format = "qdegen-matrix-dump";
inline constexpr int dump_version = 1;

inline Json to_json(const SpectralParam& lam) {
    Json j;
    j["exact"] = lam.is_exact();
    if (lam.is_exact()) {
        j["re"] = to_string(lam.re());
        j["im_t"] = to_string(lam.im_t());
    } else {
        j["re"] = lam.inexact_value().real();
        j["im"] = lam.inexact_value().imag();
    }
    return j;
}

inline SpectralParam spectral_from_json(const Json& j) {
    if (j.at("exact").get<bool>())
        return SpectralParam::exact(parse_rational(j.at("re").get<std::string>()),
                                    parse_rational(j.at("im_t").get<std::string>()));
    return SpectralParam::inexact({j.at("re").get<double>(), j.at("im").get<double>()});
}

inline Json to_json(const RepSpec& spec) {
    Json j;
    j["r"] = spec.r;
    j["s"] = spec.s;
    j["epsilon"] = spec.epsilon;
    j["lambda"] = to_json(spec.lambda);
    j["q"] = spec.q.q();
    j["cutoff"] = spec.cutoff;
    return j;
}

inline RepSpec spec_from_json(const Json& j) {
    RepSpec spec;
    spec.r = j.at("r").get<int>();
    spec.s = j.at("s").get<int>();
    spec.epsilon = j.at("epsilon").get<int>();
    spec.lambda = spectral_from_json(j.at("lambda"));
    spec.q = QParam(j.at("q").get<double>());
    spec.cutoff = j.at("cutoff").get<int>();
    return spec;
}

inline Json triplets_json(const SparseMatrix& m) {
    Json arr = Json::array();
    for (Eigen::Index c = 0; c < m.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(m, c); it; ++it)
            arr.push_back(Json::array({it.row(), it.col(), it.value().real(), it.value().imag()}));
    return arr;
}

inline Json generators_json(const std::vector<GeneratorMatrix>& gens) {
    Json arr = Json::array();
    for (const auto& g : gens) {
        Json j;
        j["index"] = g.index;
        j["name"] = "I" + std::to_string(g.index) + "," + std::to_string(g.index - 1);
        j["nnz"] = g.matrix.nonZeros();
        j["triplets"] = triplets_json(g.matrix);
        arr.push_back(std::move(j));
    }
    return arr;
}

/// Chain labels; half-integral so'_q(3) labels are written as "p/2" strings.
inline Json chain_json(const ChainPattern& c) {
    Json arr = Json::array();
    for (int j = c.n(); j >= 2; --j) {
        const int t = c.twice(j);
        if (t % 2 == 0) arr.push_back(t / 2);
        else arr.push_back(std::to_string(t) + "/2");
    }
    return arr;
}

inline Json dump_degenerate(const DegenerateRep& rep) {
    Json j;
    j["format"] = dump_format;
    j["version"] = dump_version;
    j["kind"] = "degenerate";
    j["spec"] = to_json(rep.spec);
    j["basis_kind"] = to_string(rep.basis_kind);
    j["dimension"] = rep.space->dimension();
    Json basis = Json::array();
    for (const auto& p : rep.space->basis()) basis.push_back(p.entries());
    j["basis"] = std::move(basis);
    Json dropped = Json::array();
    for (std::size_t i = 0; i < rep.dropped.size(); ++i)
        if (rep.dropped[i]) dropped.push_back(i);
    j["truncated_columns"] = std::move(dropped);
    j["generators"] = generators_json(rep.generators);
    return j;
}

/// Dump of a compact representation; `kind` is "so3" or "class1".
inline Json dump_compact(const std::string& kind, int n, const Rational& top, const QParam& p,
                         const std::vector<GeneratorMatrix>& gens) {
    Json j;
    j["format"] = dump_format;
    j["version"] = dump_version;
    j["kind"] = kind;
    j["n"] = n;
    j["top"] = to_string(top);
    j["q"] = p.q();
    const auto chains = enumerate_chain(n, top);
    j["dimension"] = chains.size();
    Json basis = Json::array();
    for (const auto& c : chains) basis.push_back(chain_json(c));
    j["basis"] = std::move(basis);
    j["generators"] = generators_json(gens);
    return j;
}

/// Matrices read back from a dump. Degenerate dumps also rebuild the space.
struct LoadedDump {
    std::string kind;
    QParam q;
    std::vector<GeneratorMatrix> generators;
    std::optional<DegenerateRep> degenerate;
    int n = 0;
    Rational top{0};
};

inline LoadedDump load_dump(const Json& j) {
    if (!j.is_object() || j.value("format", std::string()) != dump_format)
        throw InvalidParameter("not a matrix dump");
    if (j.at("version").get<int>() != dump_version) throw InvalidParameter("unsupported dump version");
    LoadedDump out;
    out.kind = j.at("kind").get<std::string>();
    const std::size_t dim = j.at("dimension").get<std::size_t>();
    for (const auto& g : j.at("generators")) {
        GeneratorMatrix gm{g.at("index").get<int>(),
                           SparseMatrix(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
        std::vector<Triplet> trips;
        for (const auto& t : g.at("triplets")) {
            const auto row = t.at(0).get<std::int64_t>(), col = t.at(1).get<std::int64_t>();
            if (row < 0 || col < 0 || static_cast<std::size_t>(row) >= dim || static_cast<std::size_t>(col) >= dim)
                throw InvalidParameter("triplet index outside the declared dimension");
            trips.emplace_back(row, col, Complex(t.at(2).get<double>(), t.at(3).get<double>()));
        }
        gm.matrix.setFromTriplets(trips.begin(), trips.end());
        gm.matrix.makeCompressed();
        out.generators.push_back(std::move(gm));
    }
    if (out.kind == "degenerate") {
        DegenerateRep rep;
        rep.spec = spec_from_json(j.at("spec"));
        rep.spec.validate();
        out.q = rep.spec.q;
        rep.space = std::make_shared<const TruncatedSpace>(rep.spec.r, rep.spec.s, rep.spec.epsilon, rep.spec.cutoff);
        if (rep.space->dimension() != dim) throw InvalidParameter("dump dimension does not match its spec");
        const auto& basis = j.at("basis");
        for (std::size_t i = 0; i < dim; ++i)
            if (basis.at(i).get<std::vector<int>>() != rep.space->pattern(i).entries())
                throw InvalidParameter("dump basis does not match the canonical ordering");
        rep.basis_kind = j.at("basis_kind").get<std::string>() == "primed" ? BasisKind::primed : BasisKind::standard;
        rep.dropped.assign(dim, false);
        for (const auto& c : j.at("truncated_columns")) rep.dropped.at(c.get<std::size_t>()) = true;
        rep.generators = out.generators;
        if (rep.generators.size() != static_cast<std::size_t>(rep.spec.r + rep.spec.s - 1))
            throw InvalidParameter("dump has the wrong number of generators");
        out.degenerate = std::move(rep);
    } else if (out.kind == "so3" || out.kind == "class1") {
        out.q = QParam(j.at("q").get<double>());
        out.n = j.at("n").get<int>();
        out.top = parse_rational(j.at("top").get<std::string>());
    } else {
        throw InvalidParameter("unknown dump kind '" + out.kind + "'");
    }
    return out;
}

inline Json to_json(const RelationResidual& r) {
    Json j;
    j["relation"] = r.name();
    j["kind"] = to_string(r.kind);
    j["i"] = r.i;
    j["j"] = r.j;
    j["residual"] = r.residual;
    j["pass"] = r.pass;
    if (r.worst_column) j["worst_column"] = *r.worst_column;
    else j["worst_column"] = nullptr;
    j["worst_pattern"] = r.worst_pattern;
    return j;
}

inline Json to_json(const ResidualReport& rep) {
    Json j;
    j["pass"] = rep.pass();
    j["tolerance"] = rep.tolerance;
    j["max_residual"] = rep.max_residual();
    j["checked_columns"] = rep.checked_columns;
    Json arr = Json::array();
    for (const auto& r : rep.relations) arr.push_back(to_json(r));
    j["relations"] = std::move(arr);
    return j;
}

inline Json to_json(const MetricSolution& m, const TruncatedSpace& space) {
    Json j;
    j["status"] = to_string(m.status);
    j["components"] = m.components;
    j["max_mismatch"] = m.max_mismatch;
    if (!m.reason.empty()) j["reason"] = m.reason;
    Json w = Json::array();
    for (std::size_t b = 0; b < m.weights.size(); ++b)
        w.push_back(Json::array({space.block(b).m, space.block(b).mp, m.weights[b]}));
    j["weights"] = std::move(w);
    return j;
}

inline Json to_json(const IntertwinerSolution& s, const TruncatedSpace& space) {
    Json j;
    j["found"] = s.found;
    j["residual"] = s.residual;
    j["raw_residual"] = s.raw_residual;
    if (!s.reason.empty()) j["reason"] = s.reason;
    Json v = Json::array();
    for (std::size_t b = 0; b < s.block_values.size(); ++b)
        v.push_back(Json::array({space.block(b).m, space.block(b).mp, s.block_values[b].real(),
                                 s.block_values[b].imag()}));
    j["block_values"] = std::move(v);
    return j;
}

inline Json to_json(const HalfPlane& h) { return Json::array({h.a, h.b, h.c}); }

inline Json to_json(const LatticePredicate& p) {
    Json j;
    j["text"] = p.to_string();
    Json inc = Json::array();
    for (const auto& h : p.include) inc.push_back(to_json(h));
    j["include"] = std::move(inc);
    Json exc = Json::array();
    for (const auto& e : p.exclude) {
        Json one = Json::array();
        for (const auto& h : e) one.push_back(to_json(h));
        exc.push_back(std::move(one));
    }
    j["exclude"] = std::move(exc);
    return j;
}

inline Json to_json(const Classification& c) {
    Json j;
    j["r"] = c.r;
    j["s"] = c.s;
    j["epsilon"] = c.epsilon;
    j["lambda"] = to_json(c.lambda);
    j["relation"] = to_string(c.relation);
    j["irreducible"] = c.irreducible;
    j["unclassified"] = c.unclassified;
    j["ladder"] = c.ladder;
    j["direct_sum"] = c.direct_sum;
    j["star_series"] = to_string(c.star_series);
    Json arr = Json::array();
    for (const auto& k : c.constituents) {
        Json cj;
        cj["name"] = k.name;
        cj["region"] = to_json(k.region);
        cj["realized_on"] = to_string(k.realized_on);
        cj["star"] = k.star;
        cj["finite_dim"] = k.finite_dim;
        arr.push_back(std::move(cj));
    }
    j["constituents"] = std::move(arr);
    j["case_trace"] = c.case_trace;
    return j;
}

inline Json to_json(const LatticeScan& s) {
    Json j;
    j["cutoff"] = s.cutoff;
    j["nodes"] = s.nodes.size();
    j["irreducible"] = s.irreducible();
    auto region = [&](const std::vector<std::size_t>& idx) {
        Json arr = Json::array();
        for (auto v : idx) arr.push_back(Json::array({s.nodes[v].first, s.nodes[v].second}));
        return arr;
    };
    Json comps = Json::array();
    for (const auto& c : s.components) comps.push_back(region(c));
    j["components"] = std::move(comps);
    Json cls = Json::array();
    for (const auto& c : s.closures) cls.push_back(region(c));
    j["invariant_closures"] = std::move(cls);
    return j;
}

}  // namespace qdegen
