#ifndef UQH_REPORT_HPP
#define UQH_REPORT_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "uqh/suites.hpp"
#include "uqh/wmod.hpp"

namespace uqh {

nlohmann::json rational_json(const Rational& x);  // "p/q"
nlohmann::json weight_json(const Weight& w);
nlohmann::json session_json(const Session& S);
nlohmann::json cell_json(const CellResult& c);

struct ReportRequest {
    std::string command;
    char type = 'A';
    int rank = 1;
    int ell = 3;
    std::optional<std::string> weight, weight2, eta;
    long denom_bound = 0;  // 0: size the field from the given weights
};

struct Report {
    nlohmann::json body;
    bool violation = false;  // a computed identity failed
};

// Throws uqh::Error on bad parameters.
Report make_report(const ReportRequest& req);
std::string render_json(const Report& r);
std::string render_text(const Report& r);

}  // namespace uqh

#endif
