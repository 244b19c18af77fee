#pragma once

/**
 * @file cli.hpp
 * @brief The `endolat` command-line driver.
 *
 * Exit codes: 0 success / lattice exists, 1 no lattice exists,
 * 2 malformed input, 3 verification failure.
 */

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "endolat/endolat.hpp"
#include "endolat/io.hpp"

namespace endolat::cli {

enum exit_code : int { ok = 0, not_exists = 1, bad_input = 2, verification_failed = 3 };

namespace detail {

inline std::string slurp(std::string const& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

inline std::vector<element> parse_list(std::string const& s) {
    std::vector<element> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = endolat::detail::trim(tok);
        out.push_back(endolat::detail::parse_index(tok, 0, "--rstar element"));
    }
    return out;
}

struct Options {
    std::string problem_path;
    std::string order_path;
    std::string mode = "auto";
    std::string rstar;
    bool tables = false;
    std::size_t n = 0;
    std::size_t sample = 0;
    std::uint64_t seed = 20140301;
};

struct Built {
    std::optional<LatticeResult> result;
    json failure;  // set when construct_with_base found nothing
};

// Shared by `construct` and `hasse`.
inline Built build(ProblemFile const& prob, Options const& opt) {
    FunctionTable const& f = prob.map;
    if (opt.mode == "paper-literal") {
        if (prob.has_base()) throw input_error("paper-literal mode does not take a base order");
        std::vector<element> rstar;
        if (opt.rstar.empty()) {
            auto const fixed = fixed_points(f);
            if (fixed.size() < 2) throw domain_error("paper-literal mode needs two fixed points");
            rstar = acyclic_linear_extension(f, components(f), fixed[0], fixed[1]).order;
        } else {
            rstar = parse_list(opt.rstar);
        }
        return {construct_paper_literal(f, rstar), {}};
    }
    if (!opt.rstar.empty()) throw input_error("--rstar is only meaningful with --mode paper-literal");
    if (!prob.has_base()) return {construct(f), {}};

    BaseConstruction bc = construct_with_base(f, prob.base_order());
    if (bc.ok()) return {std::move(bc.result), {}};
    json attempts = json::array();
    for (auto const& at : bc.attempts) {
        auto hub = [](element x) { return x == no_element ? json(nullptr) : json(x); };
        attempts.push_back({{"hub_low", hub(at.hub_low)},
                            {"hub_high", hub(at.hub_high)},
                            {"failure", at.failure},
                            {"witness", at.witness}});
    }
    return {std::nullopt, {{"schema", schema_version}, {"verified", false}, {"attempts", attempts}}};
}

} // namespace detail

/// Runs one command. Reports go to `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lattices on which a finite self-map is an endomorphism", "endolat"};
    app.require_subcommand(1);
    detail::Options opt;

    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("problem", opt.problem_path, "problem file ('-' for stdin)")->required();
    };
    auto* analyze_cmd = app.add_subcommand("analyze", "components, periods, classes, fixed points");
    add_problem(analyze_cmd);
    auto* decide_cmd = app.add_subcommand("decide", "decide whether a lattice exists");
    add_problem(decide_cmd);

    auto* construct_cmd = app.add_subcommand("construct", "build and certify a lattice");
    auto* hasse_cmd = app.add_subcommand("hasse", "Graphviz Hasse diagram of the constructed lattice");
    for (auto* sub : {construct_cmd, hasse_cmd}) {
        add_problem(sub);
        sub->add_option("--mode", opt.mode, "auto | repaired | paper-literal")
            ->check(CLI::IsMember({"auto", "repaired", "paper-literal"}));
        sub->add_option("--rstar", opt.rstar, "comma-separated ascending order of the acyclic part");
    }
    construct_cmd->add_flag("--tables", opt.tables, "include join and meet tables");

    auto* verify_cmd = app.add_subcommand("verify", "certify a given order for the map");
    add_problem(verify_cmd);
    verify_cmd->add_option("--order", opt.order_path, "order file (construct JSON or 'a b' pairs)")
        ->required();
    verify_cmd->add_flag("--tables", opt.tables, "include join and meet tables");

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force search over all lattices (n <= 6)");
    add_problem(oracle_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "compare decide/construct with the oracle on all maps");
    sweep_cmd->add_option("--n", opt.n, "universe size (1..6)")->required();
    sweep_cmd->add_option("--sample", opt.sample, "number of random maps instead of all of them");
    sweep_cmd->add_option("--seed", opt.seed, "seed for --sample");

    auto* example_cmd = app.add_subcommand("example", "print a cycle plus two fixed points");
    example_cmd->add_option("--n", opt.n, "cycle length (>= 2)")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (CLI::CallForHelp const& e) {
        app.exit(e, out, err);
        return ok;
    } catch (CLI::CallForAllHelp const& e) {
        app.exit(e, out, err);
        return ok;
    } catch (CLI::ParseError const& e) {
        app.exit(e, out, err);
        return bad_input;
    }

    try {
        auto problem = [&] { return parse_problem(detail::slurp(opt.problem_path)); };

        if (*analyze_cmd) {
            ProblemFile const prob = problem();
            out << analysis_json(prob.map, components(prob.map)).dump(2) << '\n';
            return ok;
        }
        if (*decide_cmd) {
            Decision const d = decide(problem().map);
            out << decision_json(d).dump(2) << '\n';
            return d.exists ? ok : not_exists;
        }
        if (*construct_cmd || *hasse_cmd) {
            ProblemFile const prob = problem();
            if (Decision d = decide(prob.map); !d.exists) {
                out << decision_json(d).dump(2) << '\n';
                err << no_lattice_error(d).what() << '\n';
                return not_exists;
            }
            detail::Built built = detail::build(prob, opt);
            if (!built.result) {
                out << built.failure.dump(2) << '\n';
                err << "no verified lattice extends the base order\n";
                return verification_failed;
            }
            LatticeResult const& res = *built.result;
            if (*construct_cmd) {
                out << construction_json(prob.map, res, opt.tables).dump(2) << '\n';
            } else {
                out << hasse_dot(prob, res.order, res.trace.hub_low, res.trace.hub_high);
            }
            if (!res.verified()) {
                for (auto const& law : res.certificate.law_report)
                    if (!law.passed) {
                        err << law.name << " fails at (";
                        for (std::size_t i = 0; i < law.witness.size(); ++i)
                            err << (i ? ", " : "") << law.witness[i];
                        err << ")\n";
                    }
                return verification_failed;
            }
            return ok;
        }
        if (*verify_cmd) {
            ProblemFile const prob = problem();
            Relation const r = parse_order(detail::slurp(opt.order_path), prob.size());
            json const cert = certificate_json(prob.map, r, opt.tables);
            out << json{{"schema", schema_version}, {"certificate", cert}}.dump(2) << '\n';
            bool const good = cert["partial_order"]["ok"].get<bool>() && cert["is_lattice"].get<bool>() &&
                              cert["is_endomorphism"].get<bool>();
            return good ? ok : verification_failed;
        }
        if (*oracle_cmd) {
            ProblemFile const prob = problem();
            FunctionTable const& f = prob.map;
            if (f.size() > oracle_max_size)
                throw input_error("oracle supports at most " + std::to_string(oracle_max_size) + " elements");
            OracleAnswer const ans = oracle_decide(f);
            json j{{"schema", schema_version},
                   {"n", f.size()},
                   {"exists", ans.exists},
                   {"decide_agrees", decide(f).exists == ans.exists},
                   {"witness_count", oracle_witnesses(f).size()},
                   {"distributive_exists", distributive_exists(f)}};
            j["witness_covers"] = ans.witness ? pairs_json(hasse_covers(ans.witness->order)) : json(nullptr);
            out << j.dump(2) << '\n';
            return ans.exists ? ok : not_exists;
        }
        if (*sweep_cmd) {
            if (opt.n < 1 || opt.n > oracle_max_size)
                throw input_error("--n must be between 1 and " + std::to_string(oracle_max_size));
            SweepReport const rep = sweep_compare(opt.n, opt.sample, opt.seed);
            json j{{"schema", schema_version},
                   {"n", rep.n},
                   {"maps", rep.maps},
                   {"posets", rep.posets},
                   {"lattices", rep.lattices},
                   {"exists", rep.exists},
                   {"decision_mismatches", rep.decision_mismatches},
                   {"construction_failures", rep.construction_failures},
                   {"failure_details", rep.failure_details}};
            out << j.dump(2) << '\n';
            return rep.clean() ? ok : verification_failed;
        }
        if (*example_cmd) {
            out << format_problem(cycle_with_two_fixed_points(opt.n));
            return ok;
        }
    } catch (input_error const& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    } catch (domain_error const& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    } catch (verification_error const& e) {
        err << "verification failed: " << e.what() << '\n';
        return verification_failed;
    }
    return bad_input;
}

inline int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

} // namespace endolat::cli
