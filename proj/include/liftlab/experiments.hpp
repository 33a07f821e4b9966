#pragma once

#include "liftlab/graph.hpp"
#include "liftlab/tuning.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace liftlab {

struct SweepRecord {
    std::string family;  // cycle | torus | barbell
    int index = 0;       // family parameter (n or k)
    int n = 0;           // vertex count
    double alpha_star = 0.0;
    double tau_G_star = 0.0;
    double R_G = 0.0;
    double gamma_star = 0.0;
    double rho_star = 0.0;
    double tau_A_star = 0.0;
    double R_A = 0.0;
    double beta1 = 0.0;
    std::optional<double> beta2;  // blank on the first record of a family
    bool failed = false;
    std::string error;
};

struct SweepOptions {
    SearchSpec spec;
    bool parity = false;  // restrict beta2 differencing to same-parity indices
    int jobs = 1;
};

std::vector<int> family_indices(const std::string& family, int from, int to, int step);
Graph family_graph(const std::string& family, int index);

std::vector<SweepRecord> run_sweep(const std::string& family, const std::vector<int>& indices,
                                   const SweepOptions& opts = {});

// beta1 = log R_A / log R_G; beta2 via backward differences
// (R_G/R_A) * dR_A/dR_G at each record after the first.
void attach_betas(std::vector<SweepRecord>& records, bool parity);

void write_csv(const std::vector<SweepRecord>& records, std::ostream& os);
std::vector<SweepRecord> read_csv(std::istream& is);

struct SweepSummary {
    std::string family;
    std::vector<int> indices;
    double beta1_last = 0.0;
    double beta2_last = 0.0;
    double max_beta1 = 0.0;
};
SweepSummary summarize(const std::vector<SweepRecord>& records);
std::string summary_json(const SweepSummary& summary);

}  // namespace liftlab
