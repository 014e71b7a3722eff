#ifndef UQH_SUITES_HPP
#define UQH_SUITES_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "uqh/wmod.hpp"

namespace uqh {

// Defining relations, the K_gamma = prod q_i^{k_i H_i} identity, the [E_i, F_i^s] formulas
// and nilpotency of all root vectors, as exact matrix identities on M.
std::vector<std::string> relation_violations(const ModulePtr& M);
// T_i T_j T_i ... = T_j T_i T_j ... (m_ij factors) on every generator, evaluated on M
std::vector<std::string> braid_violations(const ModulePtr& M);
// T_i applied to every defining relation still evaluates to zero on M
std::vector<std::string> braid_image_violations(const ModulePtr& M);

enum class Status { Pass, Fail, Degenerate, Infeasible };
const char* status_name(Status s);

struct CriterionResult {
    int id = 0;
    std::string name;
    Status status = Status::Pass;
    std::vector<std::string> failures;
    std::string note;  // reason for degenerate / infeasible
    nlohmann::json detail = nlohmann::json::object();
};

struct CellResult {
    char type = 'A';
    int rank = 1, ell = 3;
    std::vector<CriterionResult> criteria;  // ids 1..8
    bool ok() const;
};

// The acceptance battery for one (type, rank, ell).  Cells where some q_i^2 = 1 only get the
// dimension criterion, computed on the negative part.
CellResult run_cell(char type, int rank, int ell);

}  // namespace uqh

#endif
