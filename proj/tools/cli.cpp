// Command line front end: verify / info / roots / construct / classify /
// module, each emitting one deterministic JSON report on stdout.
// Exit codes: 0 ok, 1 usage, 2 mathematical failure, 3 undecidable.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

#include "leibniz/classify.hpp"
#include "leibniz/io.hpp"

using Json = nlohmann::ordered_json;
using namespace leibniz;

namespace {

std::string digest(const std::string& bytes) {
    // FNV-1a, enough to tie a report to its input file
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json vec_json(const Vec& v) {
    Json out = Json::array();
    for (const Rat& x : v) out.push_back(to_string(x));
    return out;
}

Json matrix_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i)));
    return out;
}

Json subspace_json(const Subspace& s) {
    Json out;
    out["dim"] = s.dim();
    out["basis"] = matrix_json(s.basis());
    return out;
}

Json sparse_constants_json(const LeibnizAlgebra& L) {
    Json out = Json::object();
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = 0; j < L.dim(); ++j) {
            Json terms = Json::array();
            for (std::size_t k = 0; k < L.dim(); ++k)
                if (sgn(L.c(i, j, k)) != 0)
                    terms.push_back(Json::array({L.labels()[k], to_string(L.c(i, j, k))}));
            if (!terms.empty()) out[L.labels()[i] + "," + L.labels()[j]] = std::move(terms);
        }
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("LEIBNIZ_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

Subspace span_of_labels(const LeibnizAlgebra& L, const std::string& csv) {
    std::vector<Vec> vecs;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string name = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        auto idx = L.label_index(name);
        if (!idx) throw ValidationError("unknown basis label \"" + name + "\"");
        vecs.push_back(unit_vec(L.dim(), *idx));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return Subspace::span(L.dim(), vecs);
}

struct Loaded {
    LeibnizAlgebra algebra;
    std::string file_digest;
};

Loaded load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    return Loaded{parse_algebra(bytes), digest(bytes)};
}

Json certificate_json(const SimplicityCertificate& cert) {
    Json out;
    out["simple"] = cert.simple;
    out["ann_action_nonzero"] = cert.ann_action_nonzero;
    out["factor_simple"] = cert.factor_simple;
    out["ann_irreducible"] = cert.ann_irreducible;
    out["perfect"] = cert.perfect;
    out["detail"] = cert.detail;
    return out;
}

int emit(Json& report, const std::string& status, int code) {
    report["status"] = status;
    report["exit_status"] = code;
    std::cout << report.dump(2) << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for finite-dimensional Leibniz algebras"};
    app.require_subcommand(1);

    std::string file, output, cartan_labels, restrict_labels, family;
    long n = 0;
    std::string alpha_str = "0", beta_str = "0";
    std::uint64_t seed = default_seed();

    auto* verify_cmd = app.add_subcommand("verify", "check the Leibniz identity");
    verify_cmd->add_option("file", file)->required();

    auto* info_cmd = app.add_subcommand("info", "structural invariants of an algebra");
    info_cmd->add_option("file", file)->required();

    auto* roots_cmd = app.add_subcommand("roots", "Cartan subalgebra and root decomposition");
    roots_cmd->add_option("file", file)->required();
    roots_cmd->add_option("--cartan", cartan_labels, "comma-separated basis labels spanning H");
    roots_cmd->add_option("--seed", seed, "seed for the Cartan search");

    auto* construct_cmd = app.add_subcommand("construct", "write a template algebra file");
    construct_cmd->add_option("family", family, "sl22 | sl2n | standard")->required();
    construct_cmd->add_option("--n", n);
    construct_cmd->add_option("--alpha", alpha_str);
    construct_cmd->add_option("--beta", beta_str);
    construct_cmd->add_option("-o,--output", output)->required();

    auto* classify_cmd = app.add_subcommand("classify", "match against the simple families");
    classify_cmd->add_option("file", file)->required();

    auto* module_cmd = app.add_subcommand("module", "module-theoretic computations");
    module_cmd->add_option("file", file)->required();
    bool adjoint = false, weights = false, flag = false, extended = false, three_irred = false;
    module_cmd->add_flag("--adjoint", adjoint, "use the adjoint module");
    module_cmd->add_option("--restrict", restrict_labels, "restrict the algebra to these labels");
    module_cmd->add_flag("--weights", weights);
    module_cmd->add_flag("--flag", flag);
    module_cmd->add_flag("--extended-lie", extended);
    module_cmd->add_flag("--three-irreducible", three_irred);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    Json report;
    {
        std::string echo;
        for (int i = 0; i < argc; ++i) {
            if (i) echo += ' ';
            echo += argv[i];
        }
        report["command"] = echo;
    }

    try {
        if (*verify_cmd) {
            Loaded in = load_input(file);
            report["input_digest"] = in.file_digest;
            auto witness = verify_leibniz(in.algebra);
            Json result;
            result["leibniz"] = !witness;
            if (witness) {
                result["witness"] = Json::array({in.algebra.labels()[witness->i],
                                                 in.algebra.labels()[witness->j],
                                                 in.algebra.labels()[witness->k]});
                report["result"] = std::move(result);
                return emit(report, "identity violated", 2);
            }
            report["result"] = std::move(result);
            return emit(report, "ok", 0);
        }

        if (*info_cmd) {
            Loaded in = load_input(file);
            report["input_digest"] = in.file_digest;
            const LeibnizAlgebra& L = in.algebra;
            Json result;
            result["dim"] = L.dim();
            result["labels"] = L.labels();
            result["annihilator"] = subspace_json(annihilator(L).space);
            result["lie_factor_constants"] = sparse_constants_json(lie_factor(L).algebra);
            result["solvable"] = is_solvable(L);
            result["right_nilpotent"] = is_right_nilpotent(L);
            Json dseries = Json::array(), cseries = Json::array();
            for (const Subspace& s : derived_series(L)) dseries.push_back(s.dim());
            for (const Subspace& s : right_central_series(L)) cseries.push_back(s.dim());
            result["derived_series_dims"] = std::move(dseries);
            result["right_central_series_dims"] = std::move(cseries);
            result["simplicity"] = certificate_json(is_simple(L));
            report["result"] = std::move(result);
            return emit(report, "ok", 0);
        }

        if (*roots_cmd) {
            Loaded in = load_input(file);
            report["input_digest"] = in.file_digest;
            const LeibnizAlgebra& L = in.algebra;
            Subspace H = cartan_labels.empty() ? find_cartan(L, seed)
                                               : span_of_labels(L, cartan_labels);
            RootDatum rd = root_decomposition(L, H);
            Json result;
            result["cartan"] = subspace_json(H);
            Json roots = Json::array();
            for (const Root& r : rd.roots) {
                Json jr;
                jr["functional"] = vec_json(r.functional);
                jr["dim"] = r.space.dim();
                jr["parity"] = r.parity == Parity::odd ? "odd" : "even";
                jr["space"] = subspace_json(r.space);
                jr["ann_part"] = subspace_json(r.ann_part);
                roots.push_back(std::move(jr));
            }
            result["roots"] = std::move(roots);
            try {
                StructureCheckReport rep = structure_checks(L, rd);
                Json jp;
                jp["cartan_abelian"] = rep.cartan_abelian;
                jp["ann_decomposes"] = rep.ann_decomposes;
                jp["odd_roots_checked"] = rep.odd_roots_checked;
                jp["even_roots_checked"] = rep.even_roots_checked;
                result["structure_checks"] = std::move(jp);
            } catch (const SemisimplicityNotEstablished& e) {
                result["structure_checks"] = nullptr;
                result["structure_checks_skipped"] = e.what();
            }
            report["result"] = std::move(result);
            return emit(report, "ok", 0);
        }

        if (*construct_cmd) {
            Rat alpha = parse_rational(alpha_str), beta = parse_rational(beta_str);
            LeibnizAlgebra L = [&] {
                if (family == "sl22") return construct_sl22(alpha, beta);
                if (family == "sl2n") return construct_sl2n(n, alpha, beta);
                if (family == "standard") return construct_standard(n);
                throw CLI::ValidationError("family", "expected sl22, sl2n or standard");
            }();
            save_algebra(L, output);
            Json result;
            result["family"] = family;
            result["dim"] = L.dim();
            result["output"] = output;
            report["result"] = std::move(result);
            return emit(report, "ok", 0);
        }

        if (*classify_cmd) {
            Loaded in = load_input(file);
            report["input_digest"] = in.file_digest;
            ClassificationResult res = classify(in.algebra);
            Json result;
            switch (res.variant) {
                case ClassificationVariant::Template: result["variant"] = "Template"; break;
                case ClassificationVariant::Standard: result["variant"] = "Standard"; break;
                case ClassificationVariant::NotApplicable:
                    result["variant"] = "NotApplicable";
                    break;
            }
            result["verified"] = res.variant != ClassificationVariant::NotApplicable;
            result["note"] = res.note;
            if (res.variant != ClassificationVariant::NotApplicable) {
                result["n"] = res.n;
                result["basis_change"] = matrix_json(res.basis_change);
            }
            if (res.variant == ClassificationVariant::Template) {
                result["alpha"] = to_string(res.alpha);
                result["beta"] = to_string(res.beta);
            }
            report["result"] = std::move(result);
            return emit(report, "ok", 0);
        }

        if (*module_cmd) {
            if (!adjoint) throw CLI::ValidationError("module", "--adjoint is required");
            if (weights + flag + extended + three_irred != 1)
                throw CLI::ValidationError(
                    "module",
                    "choose exactly one of --weights, --flag, --extended-lie, "
                    "--three-irreducible");
            Loaded in = load_input(file);
            report["input_digest"] = in.file_digest;
            auto shared = std::make_shared<LeibnizAlgebra>(in.algebra);
            LeibnizModule M = adjoint_module(shared);
            if (!restrict_labels.empty())
                M = restrict_module(M, span_of_labels(*shared, restrict_labels));
            Json result;
            if (three_irred) {
                result["three_irreducible"] = is_3_irreducible(M);
            } else if (extended) {
                EigenvectorDatum ed = extended_lie_eigenvector(M);
                result["phi"] = vec_json(ed.phi);
                result["psi"] = vec_json(ed.psi);
                result["vector"] = vec_json(ed.v);
            } else {
                std::vector<WeightDatum> wd = weight_decomposition(M);
                Json spaces = Json::array();
                for (WeightDatum& w : wd) {
                    Json jw;
                    jw["functional"] = vec_json(w.functional);
                    jw["dim"] = w.space.dim();
                    jw["space"] = subspace_json(w.space);
                    if (flag) {
                        FlagBasis fb = flag_basis(M, w);
                        Json blocks = Json::array();
                        for (const FlagBlock& b : fb.blocks) {
                            Json jb;
                            Json anns = Json::array();
                            for (const Vec& v : b.ann_vectors) anns.push_back(vec_json(v));
                            jb["ann_vectors"] = std::move(anns);
                            jb["eigen_vector"] =
                                b.eigen_vector ? vec_json(*b.eigen_vector) : Json(nullptr);
                            blocks.push_back(std::move(jb));
                        }
                        jw["flag_blocks"] = std::move(blocks);
                    }
                    spaces.push_back(std::move(jw));
                }
                result["weight_spaces"] = std::move(spaces);
            }
            report["result"] = std::move(result);
            return emit(report, "ok", 0);
        }
    } catch (const CLI::ValidationError& e) {
        report["result"] = nullptr;
        report["error"] = e.what();
        return emit(report, "usage error", 1);
    } catch (const ParseError& e) {
        report["result"] = nullptr;
        report["error"] = e.what();
        return emit(report, "invalid input", 1);
    } catch (const ValidationError& e) {
        report["result"] = nullptr;
        report["error"] = e.what();
        return emit(report, "invalid input", 1);
    } catch (const Undecidable& e) {
        report["result"] = nullptr;
        report["error"] = e.what();
        return emit(report, "undecidable", 3);
    } catch (const SplittingFailure& e) {
        report["result"] = nullptr;
        report["error"] = e.what();
        return emit(report, "splitting failure", 3);
    } catch (const Error& e) {
        report["result"] = nullptr;
        report["error"] = e.what();
        return emit(report, "error", 2);
    }
    return 1;
}
