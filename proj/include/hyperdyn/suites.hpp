#pragma once

#include <string>
#include <vector>

#include "hyperdyn/budget.hpp"
#include "hyperdyn/family.hpp"

namespace hyperdyn {

struct SuiteRow {
    std::string proposition;
    std::string instance;
    std::string base_verdict;
    std::string lifted_verdict;
    std::string relation_expected;
    std::string relation_observed;
    bool pass = false;
};

/// Suite ids accepted by run_suite, without "all".
const std::vector<std::string>& suite_ids();

/// Runs a suite on its pinned instances. "all" concatenates every suite and
/// appends a total row. Throws InputError for unknown ids.
std::vector<SuiteRow> run_suite(const std::string& id, const Budget& budget = {});

/// CSV with header proposition,instance,base_verdict,lifted_verdict,
/// relation_expected,relation_observed,pass.
std::string suite_csv(const std::vector<SuiteRow>& rows);

/// The pinned random corpus: 50 systems, |X| <= 7, period <= 3, half of
/// them drawn as permutation families.
std::vector<System> random_corpus();

}  // namespace hyperdyn
