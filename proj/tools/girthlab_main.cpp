// girthlab command line front end: construction, verification, and report
// commands over the library.  Exit codes: 0 verified/produced, 1 definite
// refutation (witness printed), 2 inconclusive or out of budget, 64 usage.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "girthlab/behrend.hpp"
#include "girthlab/codes.hpp"
#include "girthlab/common.hpp"
#include "girthlab/equations.hpp"
#include "girthlab/hypergraph.hpp"
#include "girthlab/numbers.hpp"
#include "girthlab/pipelines.hpp"
#include "girthlab/sidon.hpp"

using namespace girthlab;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kRefuted = 1, kInconclusive = 2, kUsage = 64 };

struct Common {
    std::uint64_t q = 0, p = 0;
    unsigned m = 0;
    int r = 0;
    std::string lambda_csv;
    unsigned cap = 7;
    std::uint64_t budget = 0;
    int threads = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "text";
    std::string in;
};

std::vector<std::int64_t> parse_lambda(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoll(tok));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

// every run with --out echoes its resolved configuration
void write_manifest(const Common& c, const std::string& command,
                    const std::map<std::string, std::string>& extra = {}) {
    if (c.out.empty()) return;
    nlohmann::json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["seed"] = c.seed;
    j["budget"] = c.budget ? c.budget : default_budget();
    j["threads"] = c.threads;
    j["config"] = {{"q", c.q},     {"p", c.p},         {"m", c.m},
                   {"r", c.r},     {"lambda", c.lambda_csv}, {"cap", c.cap},
                   {"in", c.in},   {"format", c.format}};
    for (auto& [k, v] : extra) j["config"][k] = v;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    j["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    write_file((std::filesystem::path(c.out) / "manifest.json").string(), j.dump(2) + "\n");
}

std::string primary_path(const Common& c, const std::string& name) {
    return (std::filesystem::path(c.out) / name).string();
}

pipelines::PipelineOptions pipeline_opts(const Common& c) {
    pipelines::PipelineOptions o;
    o.threads = c.threads;
    o.budget = c.budget;
    o.seed = c.seed;
    return o;
}

hypergraph::BergeHypergraph load_hypergraph(const Common& c) {
    if (c.in.empty()) throw std::invalid_argument("--in hypergraph file required");
    return hypergraph::from_text(read_file(c.in));
}

int emit_report(const Common& c, const std::string& name,
                const hypergraph::BergeHypergraph& H, const pipelines::ConstructionReport& rep) {
    std::cout << pipelines::report_text(rep);
    if (!c.out.empty()) {
        write_file(primary_path(c, name + ".json"), pipelines::report_json(rep) + "\n");
        if (H.full_ring() && H.rprime_size() <= (1u << 22))
            write_file(primary_path(c, name + ".hypergraph"), hypergraph::to_text(H));
    }
    if (rep.girth_exact && *rep.girth_exact < rep.target_girth) {
        if (rep.upper_cert && rep.upper_cert->refutation)
            std::cout << hypergraph::certificate_json(*rep.upper_cert) << "\n";
        return kRefuted;
    }
    if (!rep.achieved) return kInconclusive;
    return kOk;
}

codes::ParityCheckMatrix build_code_from_flags(const Common& c, const std::string& kind,
                                               unsigned d) {
    if (kind == "dumer5") return codes::dumer_d5(c.q, c.m ? c.m : 2);
    if (kind == "bch6") return codes::bch_d6(c.q, c.m ? c.m : 2);
    if (kind == "rs") return codes::rs_parity(c.q, d);
    throw std::invalid_argument("unknown code kind " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"girth-5/6 Berge hypergraph constructions and verifiers"};
    app.set_config("--config", "", "flat key = value configuration file");
    app.require_subcommand(1);
    app.fallthrough(true);  // global flags remain usable after the subcommand

    Common c;
    app.add_option("--q", c.q, "field order")->capture_default_str();
    app.add_option("--p", c.p, "prime modulus")->capture_default_str();
    app.add_option("--m", c.m, "extension degree")->capture_default_str();
    app.add_option("--r", c.r, "uniformity / set size")->capture_default_str();
    app.add_option("--lambda", c.lambda_csv, "comma separated lambda entries");
    app.add_option("--cap", c.cap, "girth search cap")->capture_default_str();
    app.add_option("--budget", c.budget, "elementary-check budget (0 = GIRTHLAB_BUDGET or 1e9)");
    app.add_option("--threads", c.threads, "worker threads (0 = all)");
    app.add_option("--seed", c.seed, "seed for sampled searches");
    app.add_option("--out", c.out, "output directory (primary files + manifest)");
    app.add_option("--format", c.format, "text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--in", c.in, "input file");

    std::vector<std::int64_t> check_values;
    auto* sc = app.add_subcommand("sidon-check", "test whether a set is Sidon");
    sc->add_option("values", check_values, "set elements");
    std::uint64_t sidon_mod = 0;
    sc->add_option("--mod", sidon_mod, "check in Z_mod instead of Z");

    std::int64_t max_entry = 545;
    std::string search_prefix;
    auto* ss = app.add_subcommand("sidon-search",
                                  "first Sidon vector with the square products property");
    ss->add_option("--max-entry", max_entry, "entry bound")->capture_default_str();
    ss->add_option("--prefix", search_prefix, "resume from this comma separated prefix");

    std::string s_csv;
    auto* ac = app.add_subcommand("admissible-class",
                                  "residue classes making every s a non-residue");
    ac->add_option("--s", s_csv, "comma separated square-free integers");

    auto* ap = app.add_subcommand("appendix", "cyclic 4-product table for lambda");

    auto* bh = app.add_subcommand("behrend", "solution-free set construction");
    int bC = 1, bl = 3;
    std::uint64_t bn = 0;
    std::string bmethod = "digit";
    bh->add_option("--n", bn, "integer range for the digit construction");
    bh->add_option("--C", bC, "coefficient bound");
    bh->add_option("--l", bl, "maximum variable count");
    bh->add_option("--method", bmethod, "digit|greedy")->check(CLI::IsMember({"digit", "greedy"}));

    std::string ckind = "rs";
    unsigned cd = 5;
    auto* cb = app.add_subcommand("code-build", "construct a parity check matrix");
    cb->add_option("--kind", ckind, "dumer5|bch6|rs")
        ->check(CLI::IsMember({"dumer5", "bch6", "rs"}));
    cb->add_option("--d", cd, "designed distance (rs)");
    auto* cdist = app.add_subcommand("code-distance", "exhaustive minimum distance check");

    auto* hb = app.add_subcommand("hypergraph-build", "construct H(A, lambda)");
    std::string hring = "fq";
    std::string hcode, hbfile;
    hb->add_option("--ring", hring, "fq|fp2")->check(CLI::IsMember({"fq", "fp2"}));
    hb->add_option("--code", hcode, "parity check matrix file (columns become A)");
    hb->add_option("--b-set", hbfile, "solution-free set file (A = {(x, x^2)}, fp2 ring)");

    std::uint64_t sample_roots = 0;
    auto* gi = app.add_subcommand("girth", "Berge girth by incidence BFS");
    gi->add_option("--sample", sample_roots, "sample this many BFS roots (0 = exhaustive)");
    auto* ce = app.add_subcommand("certify", "algebraic girth certificate / witness validation");
    std::string witness_file;
    unsigned target_g = 5;
    ce->add_option("--g", target_g, "target girth");
    ce->add_option("--witness", witness_file, "validate a refutation cycle JSON");

    auto* t12 = app.add_subcommand("theorem12", "square-products girth-5 construction");
    std::string bsource = "greedy";
    t12->add_option("--b-source", bsource, "greedy|digit")
        ->check(CLI::IsMember({"greedy", "digit"}));
    auto* t13a = app.add_subcommand("theorem13-d5", "girth-5 construction from a code");
    auto* t13b = app.add_subcommand("theorem13-d6", "girth-6 construction from a code");
    std::string source = "rs";
    t13a->add_option("--source", source, "rs|dumer")->check(CLI::IsMember({"rs", "dumer"}));
    std::string source6 = "rs";
    t13b->add_option("--source", source6, "rs|bch")->check(CLI::IsMember({"rs", "bch"}));
    auto* t14 = app.add_subcommand("theorem14", "distance-6 code graph");
    std::string source14 = "rs";
    t14->add_option("--source", source14, "rs|bch|file")
        ->check(CLI::IsMember({"rs", "bch", "file"}));

    auto* rp = app.add_subcommand("report", "sphere-packing gap table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc->parsed()) {
            auto vals = check_values.empty() ? parse_lambda(c.lambda_csv) : check_values;
            if (vals.empty()) {
                std::cerr << "sidon-check: no values given\n";
                return kUsage;
            }
            auto res = sidon::is_sidon(vals, sidon_mod);
            write_manifest(c, "sidon-check");
            if (res.sidon) {
                std::cout << "sidon\n";
                return kOk;
            }
            auto w = *res.witness;
            std::cout << "not sidon: " << w.a1 << " + " << w.a2 << " = " << w.a3 << " + " << w.a4
                      << "  (" << w.a2 << " - " << w.a3 << " = " << w.a4 << " - " << w.a1 << ")\n";
            return kRefuted;
        }

        if (ss->parsed()) {
            if (c.r <= 0) {
                std::cerr << "sidon-search: --r required\n";
                return kUsage;
            }
            auto prefix = parse_lambda(search_prefix);
            auto found = sidon::search_square_products_sidon(c.r, max_entry, prefix);
            write_manifest(c, "sidon-search");
            if (!found) {
                std::cout << "exhausted: no witness up to max entry " << max_entry << "\n";
                return kInconclusive;
            }
            auto cert = sidon::has_square_products_property(*found);
            std::ostringstream os;
            for (std::size_t i = 0; i < found->entries.size(); ++i)
                os << (i ? "," : "") << found->entries[i];
            std::cout << os.str() << "\n";
            if (!c.out.empty())
                write_file(primary_path(c, "certificate.json"), sidon::certificate_json(*cert) + "\n");
            return kOk;
        }

        if (ac->parsed()) {
            std::vector<std::uint64_t> S;
            if (!s_csv.empty()) {
                for (auto v : parse_lambda(s_csv)) S.push_back(static_cast<std::uint64_t>(v));
            } else if (!c.lambda_csv.empty()) {
                sidon::Lambda lam(parse_lambda(c.lambda_csv));
                S = sidon::square_free_products(lam);
            } else {
                std::cerr << "admissible-class: --s or --lambda required\n";
                return kUsage;
            }
            auto cls = sidon::admissible_class(S, 5);
            write_manifest(c, "admissible-class");
            if (!cls) {
                std::cout << "none: exhaustive unit scan found no admissible class\n";
                return kRefuted;
            }
            nlohmann::json j;
            j["S"] = S;
            j["modulus"] = cls->modulus;
            j["residues"] = cls->residues;
            j["representative"] = cls->representative();
            j["witness_primes"] = cls->witness_primes;
            std::cout << j.dump(2) << "\n";
            if (!c.out.empty()) write_file(primary_path(c, "class.json"), j.dump(2) + "\n");
            return kOk;
        }

        if (ap->parsed()) {
            auto lam_entries = c.lambda_csv.empty() ? pipelines::davini_lambda().entries
                                                    : parse_lambda(c.lambda_csv);
            sidon::Lambda lam(lam_entries);
            auto rows = sidon::appendix_table(lam);
            std::string csv = sidon::appendix_csv(rows);
            if (c.format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& row : rows) {
                    nlohmann::json r;
                    r["index_set"] = row.index_set;
                    r["product_1"] = row.product_1;
                    r["factorization_1"] = sidon::factorization_string(row.factorization_1);
                    r["product_2"] = row.product_2;
                    r["factorization_2"] = sidon::factorization_string(row.factorization_2);
                    r["squarefree_parts"] = row.squarefree_parts;
                    j.push_back(r);
                }
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << csv;
            }
            write_manifest(c, "appendix");
            if (!c.out.empty()) write_file(primary_path(c, "appendix.csv"), csv);
            if (lam_entries == pipelines::davini_lambda().entries) {
                auto diff = pipelines::reproduce_appendix();
                std::cout << pipelines::appendix_diff_text(diff);
                if (!c.out.empty())
                    write_file(primary_path(c, "appendix_diff.txt"),
                               pipelines::appendix_diff_text(diff));
                return diff.matches == static_cast<int>(diff.rows.size()) ? kOk : kRefuted;
            }
            return kOk;
        }

        if (bh->parsed()) {
            behrend::SolutionFreeSet set;
            if (bmethod == "digit") {
                if (bn == 0) {
                    std::cerr << "behrend: --n required for the digit method\n";
                    return kUsage;
                }
                set = behrend::behrend_digit_set(bn, bC, bl, c.budget);
            } else {
                if (c.p == 0) {
                    std::cerr << "behrend: --p required for the greedy method\n";
                    return kUsage;
                }
                auto fam = equations::enumerate_family(bC, bl);
                set = behrend::greedy_avoider(c.p, fam.members, bC, bl, c.budget, c.threads);
            }
            auto text = behrend::to_text(set);
            std::cout << text;
            write_manifest(c, "behrend",
                           {{"n", std::to_string(bn)}, {"C", std::to_string(bC)},
                            {"l", std::to_string(bl)}, {"method", bmethod}});
            if (!c.out.empty()) write_file(primary_path(c, "set.txt"), text);
            return set.verified ? kOk : kInconclusive;
        }

        if (cb->parsed()) {
            if (c.q == 0) {
                std::cerr << "code-build: --q required\n";
                return kUsage;
            }
            auto H = build_code_from_flags(c, ckind, cd);
            auto text = codes::to_text(H);
            std::cout << text;
            write_manifest(c, "code-build", {{"kind", ckind}, {"d", std::to_string(cd)}});
            if (!c.out.empty()) write_file(primary_path(c, "matrix.txt"), text);
            return kOk;
        }

        if (cdist->parsed()) {
            if (c.in.empty()) {
                std::cerr << "code-distance: --in matrix file required\n";
                return kUsage;
            }
            auto H = codes::from_text(read_file(c.in));
            auto d = codes::min_distance(H, c.cap, c.budget, c.threads);
            write_manifest(c, "code-distance");
            if (d.exact) {
                std::cout << "distance " << d.value << "; dependent columns:";
                for (auto col : d.dependent_columns) std::cout << ' ' << col;
                std::cout << "\n";
            } else {
                std::cout << "distance >= " << d.value << " (all subsets up to " << c.cap
                          << " independent)\n";
            }
            return kOk;
        }

        if (hb->parsed()) {
            auto lam = parse_lambda(c.lambda_csv);
            if (lam.empty()) {
                std::cerr << "hypergraph-build: --lambda required\n";
                return kUsage;
            }
            hypergraph::BergeHypergraph H = [&] {
                if (!hcode.empty()) {
                    auto M = codes::from_text(read_file(hcode));
                    std::vector<std::uint64_t> A(M.n);
                    for (unsigned col = 0; col < M.n; ++col) {
                        std::uint64_t code = 0;
                        for (unsigned row = M.t; row-- > 0;) code = code * M.q + M.at(row, col);
                        A[col] = code;
                    }
                    return hypergraph::BergeHypergraph::build(
                        hypergraph::RingDescriptor::fq_vectors(M.q, M.t), lam, A);
                }
                if (!hbfile.empty()) {
                    auto B = behrend::from_text(read_file(hbfile));
                    std::uint64_t p = c.p ? c.p : B.modulus;
                    std::vector<std::uint64_t> A;
                    for (auto x : B.elements) A.push_back(x + mulmod(x, x, p) * p);
                    return hypergraph::BergeHypergraph::build(
                        hypergraph::RingDescriptor::fp_pairs(p), lam, A);
                }
                throw std::invalid_argument("hypergraph-build: --code or --b-set required");
            }();
            auto text = hypergraph::to_text(H);
            std::cout << H.r() << "-uniform, N = " << hypergraph::stats(H).vertices
                      << ", |E| = " << H.edge_count() << "\n";
            write_manifest(c, "hypergraph-build", {{"ring", hring}});
            if (!c.out.empty()) write_file(primary_path(c, "hypergraph.txt"), text);
            return kOk;
        }

        if (gi->parsed()) {
            auto H = load_hypergraph(c);
            hypergraph::GirthOptions go;
            go.cap = c.cap;
            go.sample_roots = sample_roots;
            go.seed = c.seed;
            go.threads = c.threads;
            go.budget = c.budget;
            auto cert = hypergraph::berge_girth(H, go);
            auto json = hypergraph::certificate_json(cert);
            std::cout << json << "\n";
            write_manifest(c, "girth");
            if (!c.out.empty()) write_file(primary_path(c, "girth.json"), json + "\n");
            if (cert.refutation) return cert.g < c.cap ? kRefuted : kOk;
            if (cert.kind == hypergraph::ClaimKind::at_least && cert.method == "bfs-oracle")
                return kOk;
            return kInconclusive;
        }

        if (ce->parsed()) {
            auto H = load_hypergraph(c);
            write_manifest(c, "certify");
            if (!witness_file.empty()) {
                auto cyc = hypergraph::cycle_from_json(read_file(witness_file));
                if (!cyc) {
                    std::cerr << "certify: no cycle in witness file\n";
                    return kUsage;
                }
                std::string why;
                if (hypergraph::validate_berge_cycle(H, *cyc, &why)) {
                    std::cout << "witness validates: a Berge " << cyc->length() << "-cycle\n";
                    return kOk;
                }
                std::cout << "witness INVALID: " << why << "\n";
                return kRefuted;
            }
            auto cert = hypergraph::algebraic_girth_certificate(H, target_g, c.budget, c.threads);
            auto json = hypergraph::certificate_json(cert);
            std::cout << json << "\n";
            if (!c.out.empty()) write_file(primary_path(c, "certificate.json"), json + "\n");
            return cert.kind == hypergraph::ClaimKind::at_least ? kOk : kInconclusive;
        }

        if (t12->parsed()) {
            pipelines::Theorem12Options o;
            o.r = c.r ? c.r : 4;
            o.p = c.p;
            o.b_source = bsource == "greedy" ? pipelines::BSource::greedy : pipelines::BSource::digit;
            if (!c.lambda_csv.empty()) o.lambda_override = parse_lambda(c.lambda_csv);
            o.common = pipeline_opts(c);
            auto [H, rep] = pipelines::theorem12(o);
            write_manifest(c, "theorem12", rep.params);
            return emit_report(c, "theorem12", H, rep);
        }

        if (t13a->parsed() || t13b->parsed()) {
            bool d5 = t13a->parsed();
            auto src = d5 ? (source == "rs" ? pipelines::CodeSource::rs : pipelines::CodeSource::dumer)
                          : (source6 == "rs" ? pipelines::CodeSource::rs : pipelines::CodeSource::bch);
            int r = c.r ? c.r : 3;
            std::uint64_t q = c.q ? c.q : 7;
            unsigned m = c.m ? c.m : 2;
            auto [H, rep] = d5 ? pipelines::theorem13_d5(r, q, m, src, pipeline_opts(c))
                               : pipelines::theorem13_d6(r, q, m, src, pipeline_opts(c));
            write_manifest(c, d5 ? "theorem13-d5" : "theorem13-d6", rep.params);
            return emit_report(c, d5 ? "theorem13_d5" : "theorem13_d6", H, rep);
        }

        if (t14->parsed()) {
            std::uint64_t q = c.q ? c.q : 7;
            codes::ParityCheckMatrix M;
            if (source14 == "file") {
                if (c.in.empty()) {
                    std::cerr << "theorem14: --in matrix file required with --source file\n";
                    return kUsage;
                }
                M = codes::from_text(read_file(c.in));
            } else if (source14 == "bch") {
                M = codes::bch_d6(q, c.m ? c.m : 2);
            } else {
                M = codes::rs_parity(q, 6);
            }
            auto [H, rep] = pipelines::theorem14_graph(M, pipeline_opts(c));
            write_manifest(c, "theorem14", rep.params);
            return emit_report(c, "theorem14", H, rep);
        }

        if (rp->parsed()) {
            if (c.in.empty()) {
                std::cerr << "report: --in file with lines `label q n k d exact|lower`\n";
                return kUsage;
            }
            std::istringstream is(read_file(c.in));
            std::vector<codes::CodeParams> params;
            std::string line;
            while (std::getline(is, line)) {
                if (line.empty() || line[0] == '#') continue;
                std::istringstream ls(line);
                codes::CodeParams cp;
                std::string kind;
                unsigned d;
                if (!(ls >> cp.label >> cp.q >> cp.n >> cp.k >> d >> kind)) continue;
                if (kind == "exact") cp.d_exact = d;
                cp.d_lower = d;
                params.push_back(cp);
            }
            auto rows = codes::sphere_packing_report(params);
            auto text = codes::sphere_packing_text(rows);
            std::cout << text;
            write_manifest(c, "report");
            if (!c.out.empty()) write_file(primary_path(c, "sphere_packing.txt"), text);
            return kOk;
        }
    } catch (const budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kInconclusive;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInconclusive;
    }
    return kUsage;
}
