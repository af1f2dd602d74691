#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "towercert/verifier.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certification of the variety tower over a quadratic field"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "build the tower and run the selected checks");
    int n = 3;
    std::string lambdas = "1,2,3";
    int degree_bound = 4;
    std::string checks;
    std::string format = "json";
    std::string out;
    long long budget = 0;
    std::vector<std::string> faults;
    verify->add_option("--n", n, "tower height")->capture_default_str();
    verify->add_option("--lambdas", lambdas, "three rational parameters a,b,c")
        ->capture_default_str();
    verify->add_option("--degree-bound", degree_bound, "rigidity degree bound")
        ->capture_default_str();
    verify->add_option("--check", checks, "comma-separated check ids (default: all)");
    verify->add_option("--report", format, "report format")
        ->check(CLI::IsMember({"json", "md"}))
        ->capture_default_str();
    verify->add_option("--out", out, "write the report to this file instead of stdout");
    verify->add_option("--budget", budget, "reduction-step budget per basis computation");
    verify->add_option("--break", faults, "inject a named fault (repeatable)");

    CLI11_PARSE(app, argc, argv);

    try {
        towercert::VerifierConfig cfg;
        cfg.n = n;
        cfg.degree_bound = degree_bound;
        std::vector<std::string> parts = split_commas(lambdas);
        if (parts.size() != 3)
            throw towercert::ConfigError("--lambdas expects exactly three rationals");
        for (std::size_t i = 0; i < 3; ++i)
            cfg.lambdas[i] = towercert::parse_rational(parts[i]);
        if (!checks.empty()) cfg.selected = split_commas(checks);
        if (budget > 0) cfg.budget = budget;
        cfg.faults = faults;

        towercert::Report rep = towercert::run_verification(cfg);
        std::string text = format == "json" ? towercert::report_to_json(rep).dump(2) + "\n"
                                            : towercert::report_to_markdown(rep);
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out);
            if (!f) throw towercert::IOError("cannot open " + out + " for writing");
            f << text;
        }
        return rep.ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
