// Command-line front end: reads eigensystem JSON, dispatches to the
// library, and emits machine-readable (JSON) or aligned-table reports.
//
// Exit codes: 0 success, 1 input/validation error, 2 computational error.

#include <symcube/json_io.hpp>
#include <symcube/symcube.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace {

using symcube::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw symcube::schema_error(path, "cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw symcube::schema_error(path, e.what());
    }
    return j;
}

symcube::Eigensystem read_system(const std::string& path) {
    return symcube::decode_eigensystem(read_json_file(path));
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw symcube::error("cannot write " + out_path);
        f << text;
    }
}

void emit(const json& out, const std::string& out_path) {
    emit_text(out.dump(2) + "\n", out_path);
}

std::vector<long> parse_primes(const std::string& csv) {
    std::vector<long> primes;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            primes.push_back(std::stol(tok));
        } catch (const std::exception&) {
            throw symcube::error("--primes: cannot parse \"" + tok + "\"");
        }
    }
    if (primes.empty()) throw symcube::error("--primes: empty prime list");
    return primes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for the symmetric cube transfer GL2 -> GSp4"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    long precision = 64;
    app.add_option("--precision", precision, "p-adic digit cap for split-case valuations")
        ->capture_default_str();

    std::string out_path;
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    std::string format = "json";
    app.add_option("--format", format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    auto* cmd_stab = app.add_subcommand("stabilize", "the two p-stabilizations of a GL2 system");
    std::string stab_input;
    cmd_stab->add_option("input", stab_input, "eigensystem JSON file")->required();

    auto* cmd_lift = app.add_subcommand("lift", "symmetric cube lift of a stabilized GL2 system");
    std::string lift_input;
    int lift_branch = 1;
    cmd_lift->add_option("input", lift_input, "eigensystem JSON file")->required();
    cmd_lift->add_option("--branch", lift_branch, "Iwahori branch 1..4")
        ->check(CLI::Range(1, 4))
        ->capture_default_str();

    auto* cmd_slope = app.add_subcommand("slope", "slope of a stabilized system");
    std::string slope_input;
    cmd_slope->add_option("input", slope_input, "eigensystem JSON file")->required();

    auto* cmd_classify = app.add_subcommand("classify", "membership in the symmetric cube locus");
    std::string classify_input, classify_primes;
    bool allow_cubic_ext = false;
    cmd_classify->add_option("input", classify_input, "GSp4 eigensystem JSON file")->required();
    cmd_classify->add_option("--primes", classify_primes, "comma-separated test primes")
        ->required();
    cmd_classify->add_flag("--allow-cubic-ext", allow_cubic_ext,
                           "accept parameters in a cubic extension (flagged)");

    auto* cmd_twist = app.add_subcommand("twist", "twist a GSp4 system by a character");
    std::string twist_input, twist_char_file;
    long twist_quadratic = 0;
    cmd_twist->add_option("input", twist_input, "GSp4 eigensystem JSON file")->required();
    cmd_twist->add_option("--character", twist_char_file, "character JSON file");
    cmd_twist->add_option("--quadratic", twist_quadratic,
                          "quadratic character modulus (odd prime or 4)");

    auto* cmd_level = app.add_subcommand("level", "cube-compatible tame level M(N)");
    long level_n = 0;
    cmd_level->add_option("N", level_n, "tame level")->required();

    auto* cmd_weights =
        app.add_subcommand("weights", "Hodge-Tate weights and the weight-map image");
    long weights_p = 5;
    std::vector<long> weights_gl2, weights_gsp4;
    cmd_weights->add_option("--p", weights_p, "prime (for the weight coordinates)")
        ->capture_default_str();
    cmd_weights->add_option("--gl2", weights_gl2, "GL2 weight k");
    cmd_weights->add_option("--gsp4", weights_gsp4, "GSp4 weight k1 k2")->expected(2);

    auto* cmd_cong = app.add_subcommand("congruences", "scan a dataset for cube congruences");
    std::string cong_gsp4, cong_gl2, cong_primes;
    long cong_depth = 4;
    long cong_jobs = 1;
    cmd_cong->add_option("--gsp4", cong_gsp4, "GSp4 dataset JSON file")->required();
    cmd_cong->add_option("--gl2", cong_gl2, "GL2 dataset JSON file")->required();
    cmd_cong->add_option("--primes", cong_primes, "comma-separated test primes")->required();
    cmd_cong->add_option("--max-depth", cong_depth, "largest congruence depth to certify")
        ->capture_default_str();
    cmd_cong->add_option("--jobs", cong_jobs, "worker threads (output order is fixed)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* cmd_suite = app.add_subcommand("oracle-suite", "cross-module identity checks");
    uint64_t suite_seed = 0;
    long suite_trials = 100;
    std::string suite_fault;
    cmd_suite->add_option("--seed", suite_seed, "RNG seed")->capture_default_str();
    cmd_suite->add_option("--trials", suite_trials, "trials per identity")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_suite->add_option("--inject-fault", suite_fault,
                          "test-only fault (transfer-t1) to demonstrate failure reporting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        symcube::set_default_precision(precision);

        if (*cmd_stab) {
            symcube::Eigensystem chi = read_system(stab_input);
            json arr = json::array();
            for (const symcube::Eigensystem& st : symcube::stabilizations(chi))
                arr.push_back(symcube::encode_eigensystem(st));
            emit(arr, out_path);
        } else if (*cmd_lift) {
            symcube::Eigensystem chi = read_system(lift_input);
            emit(symcube::encode_eigensystem(symcube::sym3_lift(chi, lift_branch)), out_path);
        } else if (*cmd_slope) {
            symcube::Eigensystem chi = read_system(slope_input);
            symcube::Valuation s = symcube::slope(chi);
            json out;
            out["slope"] = s.str();
            if (chi.group == symcube::Group::GSp4)
                out["classical_guaranteed"] = symcube::classicality_guaranteed(chi);
            emit(out, out_path);
        } else if (*cmd_classify) {
            symcube::Eigensystem chi = read_system(classify_input);
            symcube::ClassifyResult res =
                symcube::classify_sym3(chi, parse_primes(classify_primes), allow_cubic_ext);
            emit(symcube::encode_classification(res), out_path);
        } else if (*cmd_twist) {
            symcube::Eigensystem chi = read_system(twist_input);
            if (twist_char_file.empty() == (twist_quadratic == 0))
                throw symcube::error("twist: give exactly one of --character or --quadratic");
            symcube::DirichletCharacter eta =
                twist_char_file.empty()
                    ? symcube::DirichletCharacter::quadratic(twist_quadratic)
                    : symcube::decode_character(read_json_file(twist_char_file), "/");
            emit(symcube::encode_eigensystem(symcube::twist(chi, eta)), out_path);
        } else if (*cmd_level) {
            emit_text(std::to_string(symcube::sym3_level(level_n)) + "\n", out_path);
        } else if (*cmd_weights) {
            symcube::PAdicContext ctx(weights_p);
            json out;
            if (!weights_gl2.empty()) {
                long k = weights_gl2[0];
                out["group"] = "GL2";
                out["weight"] = k;
                out["hodge_tate"] = symcube::hodge_tate_weights({k}, symcube::Group::GL2);
                symcube::WeightPoint img =
                    symcube::iota(symcube::WeightPoint::classical_point(k, ctx), ctx);
                out["iota"] = {{"classical", *img.classical},
                               {"coords", {img.coords[0].str(), img.coords[1].str()}}};
            } else if (!weights_gsp4.empty()) {
                out["group"] = "GSp4";
                out["weight"] = weights_gsp4;
                out["hodge_tate"] = symcube::hodge_tate_weights(
                    {weights_gsp4[0], weights_gsp4[1]}, symcube::Group::GSp4);
            } else {
                throw symcube::error("weights: give one of --gl2 or --gsp4");
            }
            emit(out, out_path);
        } else if (*cmd_cong) {
            auto gsp4 = symcube::decode_dataset(read_json_file(cong_gsp4));
            auto gl2 = symcube::decode_dataset(read_json_file(cong_gl2));
            std::vector<long> primes = parse_primes(cong_primes);
            symcube::CongruenceReport report;
            if (cong_jobs <= 1 || gsp4.size() <= 1) {
                report = symcube::scan_congruences(gsp4, gl2, primes, cong_depth);
            } else {
                // entry-level parallelism; verdicts land at fixed indices
                report.p = gsp4.front().system.p;
                report.max_depth = cong_depth;
                report.primes = primes;
                report.verdicts.resize(gsp4.size());
                std::vector<std::thread> workers;
                std::atomic<size_t> cursor{0};
                std::atomic<bool> failed{false};
                std::string first_error;
                std::mutex err_mutex;
                size_t nworkers = std::min<size_t>(cong_jobs, gsp4.size());
                for (size_t w = 0; w < nworkers; ++w) {
                    workers.emplace_back([&] {
                        for (;;) {
                            size_t i = cursor.fetch_add(1);
                            if (i >= gsp4.size() || failed.load()) return;
                            try {
                                symcube::CongruenceReport one = symcube::scan_congruences(
                                    {gsp4[i]}, gl2, primes, cong_depth);
                                report.verdicts[i] = one.verdicts[0];
                            } catch (const std::exception& e) {
                                std::lock_guard<std::mutex> lock(err_mutex);
                                if (!failed.exchange(true)) first_error = e.what();
                            }
                        }
                    });
                }
                for (auto& t : workers) t.join();
                if (failed.load()) throw symcube::error(first_error);
            }
            if (format == "table")
                emit_text(symcube::render_table(report), out_path);
            else
                emit(symcube::encode_report(report), out_path);
        } else if (*cmd_suite) {
            auto results = symcube::run_identity_suite(suite_seed, suite_trials,
                                                       symcube::fault_from_string(suite_fault));
            bool all_pass = true;
            for (const auto& r : results) all_pass = all_pass && r.pass;
            if (format == "table") {
                std::ostringstream os;
                for (const auto& r : results) {
                    os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.trials
                       << " trials)";
                    if (!r.message.empty()) os << "  reproducer: " << r.message;
                    os << "\n";
                }
                emit_text(os.str(), out_path);
            } else {
                json out;
                out["seed"] = suite_seed;
                out["pass"] = all_pass;
                out["identities"] = symcube::encode_identity_results(results);
                emit(out, out_path);
            }
            if (!all_pass) return 2;
        }
        return 0;
    } catch (const symcube::schema_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
