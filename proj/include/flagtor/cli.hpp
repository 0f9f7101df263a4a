/**
 * @file cli.hpp
 * @brief The `flagtor` command-line front end.
 *
 * Exit codes: 0 success, 1 property failure, 2 bad input, 3 unmet precondition.
 * Output is deterministic: timings are printed only with --timings.
 */
#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "flagtor/check_all.hpp"
#include "flagtor/corpus.hpp"
#include "flagtor/json_io.hpp"
#include "flagtor/lscat.hpp"

namespace flagtor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitPrecondition = 3;

struct JobConfig {
    std::string input;
    std::string named;
    std::string coeff = "q";
    int trunc = kDefaultTruncation;
    std::string out = "table";
    std::string cache;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string beta;
    std::string alpha;
    std::string slice;
    int length = 2;
    int bound = kDefaultCobarBound;
    bool breakdown = false;
    bool dual = false;
    bool cohomology = false;
    bool timings = false;
    bool list = false;
    long long budget = kDefaultCupBudget;
    int samples = 50;
    std::uint64_t seed = 1;
    bool no_cup = false;
    int cobar_bound = 0;
    int word_bound = 0;
    std::string corpus_name;

    SweepOptions sweep() const { return SweepOptions{threads, cache}; }
    bool json() const { return out == "json"; }
};

namespace detail {

inline Exponent parse_exponent(const std::string& text, int m, const char* what) {
    Exponent e;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw InputError(std::string("bad ") + what + ": " + text);
        e.push_back(std::stoi(item));
    }
    if (static_cast<int>(e.size()) != m)
        throw InputError(std::string(what) + " needs " + std::to_string(m) + " comma-separated entries");
    return e;
}

inline std::string set_string(VertexMask s) {
    std::string out = "{";
    bool first = true;
    for (int v : mask_to_vertices(s)) {
        out += (first ? "" : ",") + std::to_string(v);
        first = false;
    }
    return out + "}";
}

inline std::string tuple_string(const Exponent& a, int scale = 1) {
    std::string out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(scale * a[i]);
    return out + ")";
}

inline std::string group_string(const DegreeGroup& g) {
    std::string out = std::to_string(g.rank);
    for (const Integer& q : g.torsion) out += " + Z/" + q.get_str();
    return out;
}

inline std::string bidegree_string(int i, const Exponent& alpha) {
    return "t=" + std::to_string(-i) + " lambda=" + tuple_string(alpha, 2);
}

inline SimplicialComplex load(const JobConfig& job) {
    if (!job.input.empty() && !job.named.empty())
        throw InputError("give either --input or --named, not both");
    if (!job.input.empty()) return read_complex_file(job.input);
    if (!job.named.empty()) return corpus(job.named);
    throw InputError("a complex is required: --input PATH or --named ID");
}

inline Coefficients field_of(const JobConfig& job) {
    const Coefficients c = Coefficients::parse(job.coeff);
    if (!c.is_field()) throw InputError("this subcommand needs field coefficients (q or fp:P)");
    return c;
}

inline void print_profile(std::ostream& out, const HomologyProfile& h, const std::string& label) {
    bool any = false;
    for (int n = h.min_degree(); n <= h.max_degree(); ++n) {
        if (h.group(n).is_zero()) continue;
        out << label << "_" << n << ": " << group_string(h.group(n)) << "\n";
        any = true;
    }
    if (!any) out << label << ": 0\n";
}

template <class Coeff>
void print_series(std::ostream& out, const TruncatedSeries<Coeff>& s) {
    out << "graded:";
    for (const auto& c : s.graded_coefficients()) out << " " << c.get_str();
    out << "\n";
    for (const auto& [alpha, c] : s.terms())
        out << bidegree_string(total_degree(alpha), alpha) << ": " << c.get_str() << "\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands. Each writes to `out` and returns an exit code.

inline int cmd_info(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const FVector fv = h_vector(k);
    const auto mf = missing_faces(k);
    const bool flag = is_flag(k);
    const int nu = nu_direct(k);
    if (job.json()) {
        Json j = complex_json(k);
        j["dimension"] = k.dimension();
        j["face_count"] = k.face_count();
        j["f_vector"] = fv.f;
        j["h_vector"] = fv.h;
        j["flag"] = flag;
        Json missing = Json::array();
        for (VertexMask s : mf) missing.push_back(mask_json(s));
        j["missing_faces"] = missing;
        j["nu"] = nu;
        j["reduced_euler_characteristic"] = reduced_euler_char(k);
        j["hash"] = canonical_hash(k);
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "m: " << k.vertex_count() << "\n";
    out << "dimension: " << k.dimension() << "\n";
    out << "faces: " << k.face_count() << "\n";
    out << "f-vector:";
    for (long long f : fv.f) out << " " << f;
    out << "\nh-vector:";
    for (long long h : fv.h) out << " " << h;
    out << "\nflag: " << (flag ? "yes" : "no") << "\n";
    out << "missing faces:";
    for (VertexMask s : mf) out << " " << detail::set_string(s);
    out << "\nnu: " << nu << "\n";
    out << "reduced euler characteristic: " << reduced_euler_char(k) << "\n";
    return kExitOk;
}

inline int cmd_homology(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const Coefficients c = Coefficients::parse(job.coeff);
    const HomologyProfile h = job.cohomology ? reduced_cohomology(k, c) : reduced_homology(k, c);
    if (job.json()) {
        out << Json{{"coeff", c.to_string()},
                    {"theory", job.cohomology ? "cohomology" : "homology"},
                    {"groups", profile_json(h)}}
                   .dump(2)
            << "\n";
        return kExitOk;
    }
    detail::print_profile(out, h, job.cohomology ? "H~^" : "H~");
    return kExitOk;
}

inline int cmd_hochster(const JobConfig& job, std::ostream& out, bool real) {
    const SimplicialComplex k = detail::load(job);
    const Coefficients c = Coefficients::parse(job.coeff);
    const auto opts = job.sweep();
    HochsterTable t;
    if (real) t = job.cohomology ? rk_cohomology(k, c, opts) : rk_homology(k, c, opts);
    else t = job.cohomology ? zk_cohomology(k, c, opts) : zk_homology(k, c, opts);
    const std::string space = real ? "R_K" : "Z_K";
    if (job.json()) {
        Json j{{"space", space},
               {"coeff", c.to_string()},
               {"theory", job.cohomology ? "cohomology" : "homology"},
               {"groups", profile_json(t.totals)}};
        if (job.breakdown) {
            Json entries = Json::array();
            for (const auto& e : t.entries) {
                Json g = group_json(e.group);
                g["degree"] = e.degree;
                g["J"] = mask_json(e.subset);
                g["subcomplex_degree"] = e.subcomplex_degree;
                entries.push_back(std::move(g));
            }
            j["breakdown"] = entries;
        }
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    detail::print_profile(out, t.totals, job.cohomology ? "H^" : "H");
    if (job.breakdown)
        for (const auto& e : t.entries)
            out << "degree " << e.degree << " J=" << detail::set_string(e.subset) << " from degree "
                << e.subcomplex_degree << ": " << detail::group_string(e.group) << "\n";
    return kExitOk;
}

inline int cmd_tor(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const Coefficients c = Coefficients::parse(job.coeff);
    const int m = k.vertex_count();
    if (!job.slice.empty()) {
        const Exponent beta = detail::parse_exponent(job.slice, m, "--slice");
        const HomologyProfile h = tor_via_koszul_complex(k, c, beta);
        if (job.json()) {
            Json groups = Json::array();
            for (int n = h.min_degree(); n <= h.max_degree(); ++n) {
                if (h.group(n).is_zero()) continue;
                Json g = group_json(h.group(n));
                g["n"] = n;
                g["multidegree"] = multidegree_json(n, beta);
                groups.push_back(std::move(g));
            }
            out << Json{{"coeff", c.to_string()}, {"beta", beta}, {"groups", groups}}.dump(2) << "\n";
            return kExitOk;
        }
        bool any = false;
        for (int n = h.min_degree(); n <= h.max_degree(); ++n) {
            if (h.group(n).is_zero()) continue;
            out << "n=" << n << " " << detail::bidegree_string(n, beta) << ": "
                << detail::group_string(h.group(n)) << "\n";
            any = true;
        }
        if (!any) out << "0\n";
        return kExitOk;
    }
    const TorTable t = tor_via_subcomplexes(k, c, job.sweep());
    if (job.json()) {
        out << tor_json(t, m).dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& e : t.entries)
        out << "n=" << e.n << " J=" << detail::set_string(e.subset) << " "
            << detail::bidegree_string(mask_size(e.subset), exponent_of_mask(e.subset, m)) << ": "
            << detail::group_string(e.group) << "\n";
    return kExitOk;
}

inline int cmd_gens_rels(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const Coefficients c = Coefficients::parse(job.coeff);
    const PresentationCounts p = generator_relation_counts(k, c, job.sweep());
    if (job.json()) {
        auto part = [](const std::vector<std::pair<VertexMask, DegreeGroup>>& v) {
            Json a = Json::array();
            for (const auto& [j, g] : v) {
                Json e = group_json(g);
                e["J"] = mask_json(j);
                a.push_back(std::move(e));
            }
            return a;
        };
        Json j{{"coeff", c.to_string()},
               {"generators", p.total_generators},
               {"relations", p.total_relations},
               {"lower_bound_only", p.lower_bound_only}};
        if (job.breakdown) {
            j["generator_breakdown"] = part(p.generators);
            j["relation_breakdown"] = part(p.relations);
        }
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "generators: " << p.total_generators << "\n";
    out << "relations: " << p.total_relations << "\n";
    if (p.lower_bound_only) out << "note: integral counts are lower bounds\n";
    if (job.breakdown) {
        for (const auto& [j, g] : p.generators)
            out << "generator J=" << detail::set_string(j) << ": " << detail::group_string(g) << "\n";
        for (const auto& [j, g] : p.relations)
            out << "relation J=" << detail::set_string(j) << ": " << detail::group_string(g) << "\n";
    }
    return kExitOk;
}

inline int cmd_koszul_dual(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const KoszulDualBasis b = koszul_dual_basis(k, job.length);
    if (job.json()) {
        Json words = Json::array();
        for (const auto& w : b.words) words.push_back(w.word);
        Json counts = Json::array();
        for (const auto& [alpha, n] : b.counts) {
            Json e = multidegree_json(total_degree(alpha), alpha);
            e["count"] = n;
            counts.push_back(std::move(e));
        }
        out << Json{{"length", b.length}, {"total", b.words.size()}, {"counts", counts}, {"words", words}}
                   .dump(2)
            << "\n";
        return kExitOk;
    }
    out << "length " << b.length << ": " << b.words.size() << " normal words\n";
    for (const auto& w : b.words) {
        for (std::size_t i = 0; i < w.word.size(); ++i) out << (i ? " " : "") << "u" << w.word[i];
        out << "\n";
    }
    return kExitOk;
}

inline int cmd_cobar_ext(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const Coefficients f = detail::field_of(job);
    if (job.beta.empty()) throw InputError("cobar-ext needs --beta");
    const Exponent beta = detail::parse_exponent(job.beta, k.vertex_count(), "--beta");
    const auto ext = cobar_ext(k, f, beta, job.bound);
    const int diag = total_degree(beta);
    if (job.json()) {
        Json dims = Json::array();
        for (long long d : ext) dims.push_back(d);
        bool off = false;
        for (std::size_t s = 0; s < ext.size(); ++s)
            if (static_cast<int>(s) != diag && ext[s] != 0) off = true;
        out << Json{{"coeff", f.to_string()}, {"beta", beta}, {"ext", dims}, {"off_diagonal", off}}.dump(2)
            << "\n";
        return kExitOk;
    }
    for (std::size_t s = 0; s < ext.size(); ++s)
        out << "Ext^" << s << ": " << ext[s] << (static_cast<int>(s) == diag ? " (diagonal)" : "") << "\n";
    return kExitOk;
}

inline int cmd_mm_check(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const Coefficients f = detail::field_of(job);
    const MilnorMooreReport r = milnor_moore_check(k, f, job.sweep());
    if (job.json())
        out << Json{{"coeff", f.to_string()}, {"e2_total", r.e2_total}, {"einf_total", r.einf_total},
                    {"collapse", r.collapse}}
                   .dump(2)
            << "\n";
    else
        out << "E2 total: " << r.e2_total << "\nEinf total: " << r.einf_total
            << "\ncollapse: " << (r.collapse ? "yes" : "no") << "\n";
    return r.collapse ? kExitOk : kExitFailure;
}

inline int cmd_series(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const MultiSeries s = job.dual ? poincare_odj(k, job.trunc) : poincare_ozk(k, job.trunc);
    if (job.json()) {
        Json j = series_json(s);
        j["series"] = job.dual ? "odj" : "ozk";
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    detail::print_series(out, s);
    return kExitOk;
}

inline int cmd_ranks(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const RankTable r = homotopy_ranks(k, job.trunc);
    if (job.json()) {
        out << series_json(r).dump(2) << "\n";
        return kExitOk;
    }
    detail::print_series(out, r);
    return kExitOk;
}

inline int cmd_chi_check(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    if (job.alpha.empty()) throw InputError("chi-check needs --alpha");
    const Exponent alpha = detail::parse_exponent(job.alpha, k.vertex_count(), "--alpha");
    const ChiInequality chi = chi_inequality(k, alpha);
    const Integer rank = homotopy_rank_at(k, alpha);
    const bool ok = chi.nonnegative && chi.value == Rational(rank);
    if (job.json())
        out << Json{{"alpha", alpha},
                    {"multidegree", multidegree_json(total_degree(alpha), alpha)},
                    {"chi", chi.value.get_str()},
                    {"rank", rank.get_str()},
                    {"direct", chi.direct},
                    {"nonnegative", chi.nonnegative},
                    {"agree", ok}}
                   .dump(2)
            << "\n";
    else
        out << "chi: " << chi.value.get_str() << (chi.direct ? "" : " (via ranks, gcd > 1)")
            << "\nrank: " << rank.get_str() << "\nagree: " << (ok ? "yes" : "no") << "\n";
    return ok ? kExitOk : kExitFailure;
}

inline Json toomer_json(const ToomerReport& t) {
    Json per = Json::object();
    for (const auto& [f, e] : t.per_field) per[f] = e;
    return Json{{"per_field", per}, {"maximum", t.maximum}};
}

inline int cmd_cat(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const auto opts = job.sweep();
    const int cat = cat_zk(k, opts);
    if (job.json()) {
        const CatReport r = cat_report(k, opts, false);
        out << Json{{"cat", cat},
                    {"via_subcomplexes", r.via_subcomplexes},
                    {"via_links", r.via_links},
                    {"toomer", toomer_json(*r.toomer)},
                    {"nu", r.nu}}
                   .dump(2)
            << "\n";
        return kExitOk;
    }
    out << cat << "\n";
    return kExitOk;
}

inline int cmd_toomer(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const auto opts = job.sweep();
    ToomerReport t;
    if (job.coeff == "all") {
        t = toomer_all_fields(k, opts);
    } else {
        const Coefficients f = detail::field_of(job);
        t.maximum = toomer(k, f, opts);
        t.per_field[f.to_string()] = t.maximum;
    }
    if (job.json()) {
        out << toomer_json(t).dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& [f, e] : t.per_field) out << f << ": " << e << "\n";
    if (t.per_field.size() > 1) out << "max: " << t.maximum << "\n";
    return kExitOk;
}

inline int cmd_cat_bound(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const auto opts = job.sweep();
    const int bound = cat_lower_bound(k, opts);
    if (job.json()) {
        const SimplicialComplex kf = flagification(k);
        out << Json{{"bound", bound},
                    {"nu", nu_direct(k)},
                    {"max_cdim_flagification", max_subcomplex_cdim(kf, opts)},
                    {"flag", is_flag(k)}}
                   .dump(2)
            << "\n";
        return kExitOk;
    }
    out << bound << "\n";
    return kExitOk;
}

inline int cmd_cup_search(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    const CupSearchResult r = cup_witness_search(k, job.sweep(), job.budget);
    if (job.json()) {
        Json j{{"d", r.d}, {"candidates_tested", r.candidates_tested}, {"budget_exhausted", r.budget_exhausted}};
        if (r.witness) {
            Json parts = Json::array(), comps = Json::array();
            for (VertexMask p : r.witness->parts) parts.push_back(mask_json(p));
            for (VertexMask c : r.witness->components) comps.push_back(mask_json(c));
            j["witness"] = Json{{"parts", parts}, {"components", comps}, {"degree", r.witness->degree},
                                {"field", r.witness->field}};
        } else {
            j["witness"] = nullptr;
        }
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "max cdim: " << r.d << "\n";
    out << "candidates tested: " << r.candidates_tested << "\n";
    if (r.witness) {
        out << "witness over " << r.witness->field << ":";
        for (std::size_t i = 0; i < r.witness->parts.size(); ++i)
            out << " " << detail::set_string(r.witness->parts[i]) << "->"
                << detail::set_string(r.witness->components[i]);
        out << "\ncup-length lower bound: " << r.witness->degree + 1 << "\n";
    } else {
        out << (r.budget_exhausted ? "no witness (budget exhausted)\n" : "no witness\n");
    }
    return kExitOk;
}

inline int cmd_check_all(const JobConfig& job, std::ostream& out) {
    const SimplicialComplex k = detail::load(job);
    CheckAllOptions opt;
    opt.coeff = Coefficients::parse(job.coeff);
    opt.trunc = job.trunc;
    opt.sweep = job.sweep();
    opt.nonsquarefree_samples = job.samples;
    opt.seed = job.seed;
    opt.cup_search = !job.no_cup;
    opt.cup_budget = job.budget;
    opt.cobar_bound = job.cobar_bound;
    opt.word_bound = job.word_bound;
    const auto results = check_all(k, opt);
    const bool ok = all_passed(results);
    if (job.json()) {
        Json props = Json::array();
        for (const auto& r : results) {
            Json p{{"name", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}};
            if (job.timings) p["seconds"] = r.seconds;
            props.push_back(std::move(p));
        }
        out << Json{{"flag", is_flag(k)}, {"passed", ok}, {"properties", props}}.dump(2) << "\n";
        return ok ? kExitOk : kExitFailure;
    }
    int counts[4] = {0, 0, 0, 0};
    for (const auto& r : results) {
        ++counts[static_cast<int>(r.status)];
        std::string tag = to_string(r.status);
        for (char& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        out << tag << " " << r.name;
        if (!r.detail.empty()) out << ": " << r.detail;
        if (job.timings) out << " [" << r.seconds << " s]";
        out << "\n";
    }
    out << counts[0] << " passed, " << counts[1] << " failed, " << counts[2] << " skipped\n";
    return ok ? kExitOk : kExitFailure;
}

inline int cmd_corpus(const JobConfig& job, std::ostream& out) {
    if (job.list) {
        out << "generators: cycle:M cross:D simplex:M points:M boundary:M octahedron icosahedron rp2 "
               "rp2-flag random-flag:M:P:SEED skeleton:I:<id> sd:<id> join(<id>,<id>) union(<id>,<id>)\n";
        out << "flag corpus:";
        for (const auto& id : small_flag_corpus()) out << " " << id;
        out << "\nnu corpus:";
        for (const auto& id : nu_corpus()) out << " " << id;
        out << "\n";
        return kExitOk;
    }
    const std::string name = !job.corpus_name.empty() ? job.corpus_name : job.named;
    if (name.empty()) throw InputError("corpus needs a name (or --list)");
    out << complex_json(corpus(name)).dump() << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"flagtor: invariants of moment-angle complexes of flag complexes", "flagtor"};
    app.require_subcommand(1);
    JobConfig job;

    auto common = [&](CLI::App* sub, bool complex = true) {
        if (complex) {
            sub->add_option("--input", job.input, "complex JSON file {\"m\":..,\"facets\":[[..]]}");
            sub->add_option("--named", job.named, "named corpus complex, e.g. cycle:4");
        }
        sub->add_option("--coeff", job.coeff, "coefficients: q | z | fp:P");
        sub->add_option("--trunc", job.trunc, "series truncation N")->check(CLI::PositiveNumber);
        sub->add_option("--out", job.out, "output format")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--cache", job.cache, "directory for cached subset sweeps");
        sub->add_option("--threads", job.threads, "worker threads for subset sweeps")
            ->check(CLI::PositiveNumber);
    };

    struct Entry {
        CLI::App* app;
        std::function<int()> fn;
    };
    std::vector<Entry> entries;
    auto add = [&](const std::string& name, const std::string& help, std::function<int()> fn) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        entries.push_back({sub, std::move(fn)});
        return sub;
    };

    add("info", "faces, f- and h-vectors, flagness, missing faces, nu", [&] { return cmd_info(job, out); });
    add("homology", "reduced (co)homology of K", [&] { return cmd_homology(job, out); })
        ->add_flag("--cohomology", job.cohomology, "reduced cohomology instead");
    for (bool real : {false, true}) {
        auto* sub = add(real ? "rk-homology" : "zk-homology",
                        real ? "homology of the real moment-angle complex" : "homology of the moment-angle complex",
                        [&, real] { return cmd_hochster(job, out, real); });
        sub->add_flag("--breakdown", job.breakdown, "list the contributing full subcomplexes");
        sub->add_flag("--cohomology", job.cohomology, "cohomology instead");
    }
    add("tor", "Tor of the loop homology algebra", [&] { return cmd_tor(job, out); })
        ->add_option("--slice", job.slice, "Koszul slice at exponent vector b1,..,bm");
    add("gens-rels", "minimal generator and relation counts", [&] { return cmd_gens_rels(job, out); })
        ->add_flag("--breakdown", job.breakdown, "per-subset counts");
    add("koszul-dual", "normal-word basis of the Koszul dual", [&] { return cmd_koszul_dual(job, out); })
        ->add_option("--length", job.length, "word length")
        ->check(CLI::NonNegativeNumber);
    {
        auto* sub = add("cobar-ext", "Ext of the face ring from the cobar complex", [&] { return cmd_cobar_ext(job, out); });
        sub->add_option("--beta", job.beta, "exponent vector b1,..,bm");
        sub->add_option("--bound", job.bound, "largest allowed |beta|")->check(CLI::PositiveNumber);
    }
    add("mm-check", "Milnor-Moore spectral sequence collapse", [&] { return cmd_mm_check(job, out); });
    add("series", "multigraded Poincare series of the loop homology", [&] { return cmd_series(job, out); })
        ->add_flag("--dual", job.dual, "series of the Koszul dual instead");
    add("ranks", "rational homotopy ranks", [&] { return cmd_ranks(job, out); });
    add("chi-check", "Euler-characteristic formula for one homotopy rank", [&] { return cmd_chi_check(job, out); })
        ->add_option("--alpha", job.alpha, "exponent vector a1,..,am");
    add("cat", "LS-category of Z_K and R_K", [&] { return cmd_cat(job, out); });
    add("toomer", "Toomer invariant (--coeff all for every relevant field)", [&] { return cmd_toomer(job, out); });
    add("cat-bound", "lower bound on cat(Z_K) for any K", [&] { return cmd_cat_bound(job, out); });
    add("cup-search", "search for cup-product witnesses", [&] { return cmd_cup_search(job, out); })
        ->add_option("--budget", job.budget, "candidate limit");
    {
        auto* sub = add("check-all", "run every cross-check", [&] { return cmd_check_all(job, out); });
        sub->add_option("--samples", job.samples, "non-squarefree multidegrees sampled");
        sub->add_option("--seed", job.seed, "sampling seed");
        sub->add_option("--budget", job.budget, "cup-search candidate limit");
        sub->add_flag("--no-cup", job.no_cup, "skip the cup-witness search");
        sub->add_option("--cobar-bound", job.cobar_bound, "largest |beta| for cobar checks");
        sub->add_option("--word-bound", job.word_bound, "largest word length for series checks");
        sub->add_flag("--timings", job.timings, "print per-property timings");
    }
    {
        auto* sub = add("corpus", "print a named complex", [&] { return cmd_corpus(job, out); });
        sub->add_option("name", job.corpus_name, "corpus id");
        sub->add_flag("--list", job.list, "list the registry");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        for (const auto& e : entries)
            if (e.app->parsed()) return e.fn();
        err << "error: no subcommand\n";
        return kExitInput;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const IntegralityViolation& e) {
        err << "property failure: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace flagtor::cli
