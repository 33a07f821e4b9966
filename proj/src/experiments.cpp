#include "liftlab/experiments.hpp"

#include <cmath>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "liftlab/io.hpp"
#include "liftlab/operators.hpp"

namespace liftlab {

namespace {

struct FamilyDef {
    int lo, cap;
    Graph (*build)(int);
};

const FamilyDef& family_def(const std::string& family) {
    static const FamilyDef cycle{3, 128, &build_cycle};
    static const FamilyDef torus{3, 10, &build_torus};
    static const FamilyDef barbell{3, 12, &build_barbell};
    if (family == "cycle") return cycle;
    if (family == "torus") return torus;
    if (family == "barbell") return barbell;
    throw std::invalid_argument("invalid-input: unknown family '" + family + "'");
}

}  // namespace

std::vector<int> family_indices(const std::string& family, int from, int to, int step) {
    const FamilyDef& def = family_def(family);
    if (step < 1) throw std::invalid_argument("invalid-parameter: step must be >= 1");
    if (from < def.lo || to > def.cap || from > to)
        throw std::invalid_argument("invalid-parameter: " + family + " indices must lie in [" +
                                    std::to_string(def.lo) + "," + std::to_string(def.cap) + "]");
    std::vector<int> out;
    for (int i = from; i <= to; i += step) out.push_back(i);
    return out;
}

Graph family_graph(const std::string& family, int index) {
    return family_def(family).build(index);
}

namespace {

SweepRecord sweep_one(const std::string& family, int index, const SearchSpec& spec) {
    SweepRecord rec;
    rec.family = family;
    rec.index = index;
    try {
        Graph g = family_graph(family, index);
        rec.n = g.n;
        FactorGraph fg = factor_graph(g);
        GdTuneResult gd = tune_gd(fg, g.q);
        rec.alpha_star = gd.alpha_star;
        rec.tau_G_star = gd.tau_star;
        rec.R_G = 1.0 / (1.0 - gd.tau_star);
        AdmmTuneResult ad = tune_admm(fg, g.q, spec);
        if (ad.status == "failed") throw std::runtime_error("tuning failed: grid non-convergent");
        rec.gamma_star = ad.gamma_star;
        rec.rho_star = ad.rho_star;
        rec.tau_A_star = ad.tau_star;
        rec.R_A = 1.0 / (1.0 - ad.tau_star);
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
    return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const std::string& family, const std::vector<int>& indices,
                                   const SweepOptions& opts) {
    family_def(family);
    std::vector<SweepRecord> records;
    records.reserve(indices.size());
    int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (int idx : indices) records.push_back(sweep_one(family, idx, opts.spec));
    } else {
        // batched parallel map, merged in index order regardless of completion order
        for (size_t base = 0; base < indices.size(); base += jobs) {
            std::vector<std::future<SweepRecord>> batch;
            for (size_t k = base; k < std::min(indices.size(), base + jobs); ++k)
                batch.push_back(std::async(std::launch::async, sweep_one, family, indices[k],
                                           opts.spec));
            for (auto& fut : batch) records.push_back(fut.get());
        }
    }
    attach_betas(records, opts.parity);
    return records;
}

void attach_betas(std::vector<SweepRecord>& records, bool parity) {
    for (size_t j = 0; j < records.size(); ++j) {
        SweepRecord& r = records[j];
        r.beta2.reset();
        if (r.failed) continue;
        r.beta1 = (r.R_G > 1.0 && r.R_A > 0.0)
                      ? std::log(r.R_A) / std::log(r.R_G)
                      : std::numeric_limits<double>::quiet_NaN();
        const SweepRecord* prev = nullptr;
        if (parity) {
            for (size_t p = j; p-- > 0;)
                if (!records[p].failed && (records[p].index - r.index) % 2 == 0) {
                    prev = &records[p];
                    break;
                }
        } else if (j > 0 && !records[j - 1].failed) {
            prev = &records[j - 1];
        }
        if (prev) {
            double dG = r.R_G - prev->R_G;
            if (dG != 0.0)
                r.beta2 = (r.R_G / r.R_A) * (r.R_A - prev->R_A) / dG;
        }
    }
}

static const char* kCsvHeader =
    "family,index,n,alpha_star,tau_G_star,R_G,gamma_star,rho_star,tau_A_star,R_A,beta1,beta2";

void write_csv(const std::vector<SweepRecord>& records, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const SweepRecord& r : records) {
        os << r.family << ',' << r.index << ',' << r.n << ',' << fmt_double(r.alpha_star) << ','
           << fmt_double(r.tau_G_star) << ',' << fmt_double(r.R_G) << ','
           << fmt_double(r.gamma_star) << ',' << fmt_double(r.rho_star) << ','
           << fmt_double(r.tau_A_star) << ',' << fmt_double(r.R_A) << ','
           << fmt_double(r.beta1) << ',';
        if (r.beta2) os << fmt_double(*r.beta2);
        os << '\n';
    }
}

std::vector<SweepRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw std::invalid_argument("invalid-input: bad sweep CSV header");
    std::vector<SweepRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (cells.size() != 12)
            throw std::invalid_argument("invalid-input: sweep CSV row needs 12 fields");
        SweepRecord r;
        r.family = cells[0];
        r.index = std::stoi(cells[1]);
        r.n = std::stoi(cells[2]);
        r.alpha_star = std::stod(cells[3]);
        r.tau_G_star = std::stod(cells[4]);
        r.R_G = std::stod(cells[5]);
        r.gamma_star = std::stod(cells[6]);
        r.rho_star = std::stod(cells[7]);
        r.tau_A_star = std::stod(cells[8]);
        r.R_A = std::stod(cells[9]);
        r.beta1 = std::stod(cells[10]);
        if (!cells[11].empty()) r.beta2 = std::stod(cells[11]);
        records.push_back(std::move(r));
    }
    return records;
}

SweepSummary summarize(const std::vector<SweepRecord>& records) {
    SweepSummary s;
    if (records.empty()) return s;
    s.family = records.front().family;
    s.max_beta1 = -std::numeric_limits<double>::infinity();
    for (const SweepRecord& r : records) {
        s.indices.push_back(r.index);
        if (!r.failed) s.max_beta1 = std::max(s.max_beta1, r.beta1);
    }
    s.beta1_last = records.back().beta1;
    s.beta2_last = records.back().beta2.value_or(std::numeric_limits<double>::quiet_NaN());
    return s;
}

std::string summary_json(const SweepSummary& summary) {
    nlohmann::json j;
    j["family"] = summary.family;
    j["indices"] = summary.indices;
    j["beta1_last"] = summary.beta1_last;
    j["beta2_last"] = summary.beta2_last;
    j["max_beta1"] = summary.max_beta1;
    return j.dump();
}

}  // namespace liftlab
