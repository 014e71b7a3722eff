// uqh-cli: reports on the unrolled restricted quantum group, through the C interface only.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uqh/uqh.h"

namespace {

const std::vector<std::string> kCommands = {"describe", "verma",  "gram", "typical",  "tensor",
                                            "ribbon",   "cover",  "bgg",  "selfdual", "suite"};

struct Options {
    std::string type = "A";
    int rank = 1;
    int ell = 4;
    std::string weight, weight2, eta;
    std::string out = "json";
    long denom_bound = 0;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--type", o.type, "Cartan type (A, B, C, D, E, F, G)")->required();
    sub->add_option("--rank", o.rank, "rank")->required();
    sub->add_option("--ell", o.ell, "order of the root of unity q")->required();
    sub->add_option("--weight", o.weight, "weight lambda as comma separated rationals lambda(H_i)");
    sub->add_option("--weight2", o.weight2, "second weight mu");
    sub->add_option("--eta", o.eta, "degree in the positive root lattice, simple root coordinates");
    sub->add_option("--out", o.out, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--denom-bound", o.denom_bound, "bound on weight denominators used to size the field")
        ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for the unrolled restricted quantum group at a root of unity"};
    app.require_subcommand(1);
    Options o;
    for (auto& c : kCommands) add_common(app.add_subcommand(c, "the " + c + " report"), o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 1;
    }

    std::string command = app.get_subcommands().front()->get_name();
    if (o.type.size() != 1) {
        std::cerr << "error: --type takes a single letter\n";
        return 1;
    }
    uqh_request req{};
    req.command = command.c_str();
    req.type = o.type[0];
    req.rank = o.rank;
    req.ell = o.ell;
    req.weight = o.weight.empty() ? nullptr : o.weight.c_str();
    req.weight2 = o.weight2.empty() ? nullptr : o.weight2.c_str();
    req.eta = o.eta.empty() ? nullptr : o.eta.c_str();
    req.denom_bound = o.denom_bound;

    char* text = nullptr;
    int violation = 0;
    uqh_status st = uqh_report(&req, o.out == "text" ? UQH_FORMAT_TEXT : UQH_FORMAT_JSON, &text, &violation);
    if (st != UQH_OK) {
        std::cerr << "error (" << uqh_status_name(st) << "): " << uqh_last_error() << "\n";
        // a failed internal consistency check is a violation, not a usage problem
        return st == UQH_INVARIANT_VIOLATION ? 2 : 1;
    }
    std::fputs(text, stdout);
    uqh_string_free(text);
    return violation ? 2 : 0;
}
