#pragma once

#include "qmf/stern_brocot.hpp"

#include <string>
#include <vector>

namespace qmf {

struct SuiteResult {
    std::string name;
    bool pass = false;
    long checks = 0;
    std::string detail;  // first failure, or a summary
    double seconds = 0;
};

struct VerifyOptions {
    int qmax = 500;           // conjugacy sweep bound
    int sb_depth = 12;        // Q(s/t) = k 2^-n and nu_F(T) = 2^-n levels
    int mediant_depth = 10;   // mediant identity levels
    int partition_depth = 20; // exact partition-of-unity levels
    int eqb_sum = 20;         // Eq-(B) exactness over prefixes with sum <= this
    int det_specs = 200;      // random specs for the determinant test
    unsigned seed = 20240901;
    bool inject_fault = false;  // harness self-test: forces one failure
    std::vector<std::string> only;  // run only these suites (empty = all)
    FoldOptions fold;
};

// Runs the exact identity suites and the closed-form golden checks.
std::vector<SuiteResult> run_verify(const VerifyOptions& opt = {});

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace qmf
