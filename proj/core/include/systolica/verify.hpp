#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "systolica/surface.hpp"
#include "systolica/surgery.hpp"

namespace systolica {

struct CorpusEntry {
    std::string name;
    TriangulatedSurface surface;
    std::string provenance; // generator call that reproduces the surface
};

/// The standard verification corpus: grid tori with subdivision ladders,
/// identified-polygon surfaces of genus 2..6, twisted and flipped variants,
/// and the small fixtures. Deterministic given the seed.
std::vector<CorpusEntry> standard_corpus(std::uint64_t seed);

struct VerificationRow {
    std::string name;
    int vertices = 0;
    int edges = 0;
    int facets = 0;
    std::optional<int> genus;
    std::optional<int> sys;        // empty for spheres
    std::optional<int> sys_h;
    std::optional<double> ratio1;  // sys / sqrt(F)
    std::optional<double> ratio2;  // sys_h * sqrt(g) / (log g * sqrt(F)), genus >= 2
    long long fill_tets = 0;
    double fill_ratio = 0.0;       // |T_N| / F
    double fill_ratio_log2 = 0.0;  // |T_N| / (F log^2 F)
    bool ok = false;
    std::string message;           // failure note when !ok
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    bool run_fill = true;
    int threads = 0; // 0: thread_budget()
};

struct VerifyOutput {
    std::vector<VerificationRow> rows;
    bool all_ok = true;
};

/// Computes one row per corpus entry (concurrently; output order is input
/// order). Per-row failures are recorded and the run continues.
VerifyOutput verify_corpus(const std::vector<CorpusEntry>& corpus, const VerifyOptions& options);

std::string rows_to_csv(const VerifyOutput& out, std::uint64_t seed);
std::string rows_to_json(const VerifyOutput& out, std::uint64_t seed);

/// Runs the filling pipeline and renders the per-stage table.
FillingReport fill_report(const TriangulatedSurface& s);
std::string fill_report_to_json(const FillingReport& r);
std::string fill_report_to_text(const FillingReport& r);

} // namespace systolica
