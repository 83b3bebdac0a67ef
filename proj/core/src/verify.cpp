#include "systolica/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "systolica/generators.hpp"
#include "systolica/parallel.hpp"
#include "systolica/systole.hpp"
#include "systolica/version.hpp"

namespace systolica {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "NA"; }
std::string opt_str(const std::optional<double>& v) { return v ? fmt(*v) : "NA"; }

} // namespace

std::vector<CorpusEntry> standard_corpus(std::uint64_t seed) {
    std::vector<CorpusEntry> corpus;
    auto add = [&corpus](std::string name, TriangulatedSurface s, std::string prov) {
        corpus.push_back({std::move(name), std::move(s), std::move(prov)});
    };

    add("sphere-tetra", tetra_sphere(), "generate sphere-tetra");
    add("csaszar", csaszar_torus(), "generate csaszar-torus");
    add("csaszar-sub1", subdivide(csaszar_torus(), 1), "subdivide(csaszar-torus, 1)");
    add("csaszar-sub2", subdivide(csaszar_torus(), 2), "subdivide(csaszar-torus, 2)");
    add("genus2-small", genus2_small(), "generate genus2-small");
    add("genus2-small-sub1", subdivide(genus2_small(), 1), "subdivide(genus2-small, 1)");
    add("genus2-small-sub2", subdivide(genus2_small(), 2), "subdivide(genus2-small, 2)");
    for (int k : {3, 4, 5, 8, 16, 32})
        add("grid-torus-" + std::to_string(k), grid_torus(k), "grid-torus(" + std::to_string(k) + ")");
    add("grid-torus-4-sub2", subdivide(grid_torus(4), 2), "subdivide(grid-torus(4), 2)");
    for (int g = 2; g <= 6; ++g)
        add("genus-polygon-" + std::to_string(g), genus_polygon(g, 2),
            "genus-polygon(" + std::to_string(g) + ", 2)");
    add("twist-grid5-sub1-off1", twist_generator(subdivide(grid_torus(5), 1), 1, 0),
        "twist(subdivide(grid-torus(5), 1), offset 1, loop 0)");
    add("twist-csaszar-sub1-off2", twist_generator(subdivide(csaszar_torus(), 1), 2, 0),
        "twist(subdivide(csaszar-torus, 1), offset 2, loop 0)");
    add("flips-grid6", random_flips(grid_torus(6), 20, seed),
        "random-flips(grid-torus(6), 20, seed " + std::to_string(seed) + ")");
    add("flips-genus2", random_flips(genus_polygon(2, 2), 30, seed + 1),
        "random-flips(genus-polygon(2, 2), 30, seed " + std::to_string(seed + 1) + ")");
    return corpus;
}

VerifyOutput verify_corpus(const std::vector<CorpusEntry>& corpus, const VerifyOptions& options) {
    VerifyOutput out;
    out.rows.resize(corpus.size());
    const int threads = options.threads > 0 ? options.threads : thread_budget();

    parallel_for(static_cast<int>(corpus.size()), threads, [&](int, int i) {
        const CorpusEntry& entry = corpus[static_cast<size_t>(i)];
        VerificationRow& row = out.rows[static_cast<size_t>(i)];
        row.name = entry.name;
        try {
            const TriangulatedSurface& s = entry.surface;
            row.vertices = s.vertex_count();
            row.edges = s.edge_count();
            row.facets = s.face_count();
            row.genus = s.genus();

            if (row.genus && *row.genus >= 1) {
                SystoleResult sys = homotopy_systole(s);
                SystoleResult hsys = homological_systole(s);
                row.sys = sys.length;
                row.sys_h = hsys.length;
                require(sys.length <= hsys.length, ErrCode::InternalInvariant,
                        "Sys > Sys^H on " + entry.name);
                row.ratio1 = sys.length / std::sqrt(static_cast<double>(row.facets));
                if (*row.genus >= 2)
                    row.ratio2 = hsys.length * std::sqrt(static_cast<double>(*row.genus)) /
                                 (std::log(static_cast<double>(*row.genus)) *
                                  std::sqrt(static_cast<double>(row.facets)));
                require(std::isfinite(*row.ratio1) && (!row.ratio2 || std::isfinite(*row.ratio2)),
                        ErrCode::InternalInvariant, "non-finite ratio on " + entry.name);
            }

            if (options.run_fill) {
                FillResult fr = fill(entry.surface);
                row.fill_tets = fr.report.tet_count;
                row.fill_ratio = fr.report.ratio;
                double lf = std::log(static_cast<double>(row.facets));
                row.fill_ratio_log2 = static_cast<double>(row.fill_tets) /
                                      (static_cast<double>(row.facets) * lf * lf);
            }
            row.ok = true;
        } catch (const Error& e) {
            row.ok = false;
            row.message = e.what();
        }
    });

    for (const auto& row : out.rows)
        if (!row.ok) out.all_ok = false;
    return out;
}

std::string rows_to_csv(const VerifyOutput& out, std::uint64_t seed) {
    std::string csv = "# systolica " + std::string(kVersion) + " seed " + std::to_string(seed) + "\n";
    csv += "name,vertices,edges,facets,genus,sys,sys_h,ratio1,ratio2,fill_tets,fill_ratio,fill_ratio_log2,status\n";
    for (const auto& r : out.rows) {
        csv += r.name + "," + std::to_string(r.vertices) + "," + std::to_string(r.edges) + "," +
               std::to_string(r.facets) + "," + opt_str(r.genus) + "," + opt_str(r.sys) + "," +
               opt_str(r.sys_h) + "," + opt_str(r.ratio1) + "," + opt_str(r.ratio2) + "," +
               std::to_string(r.fill_tets) + "," + fmt(r.fill_ratio) + "," + fmt(r.fill_ratio_log2) + "," +
               (r.ok ? "ok" : "failed") + "\n";
    }
    return csv;
}

std::string rows_to_json(const VerifyOutput& out, std::uint64_t seed) {
    nlohmann::ordered_json doc;
    doc["schema"] = kReportSchema;
    doc["version"] = kVersion;
    doc["seed"] = seed;
    doc["all_ok"] = out.all_ok;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : out.rows) {
        nlohmann::ordered_json j;
        j["name"] = r.name;
        j["vertices"] = r.vertices;
        j["edges"] = r.edges;
        j["facets"] = r.facets;
        if (r.genus) j["genus"] = *r.genus; else j["genus"] = nullptr;
        if (r.sys) j["sys"] = *r.sys; else j["sys"] = nullptr;
        if (r.sys_h) j["sys_h"] = *r.sys_h; else j["sys_h"] = nullptr;
        if (r.ratio1) j["ratio1"] = fmt(*r.ratio1); else j["ratio1"] = nullptr;
        if (r.ratio2) j["ratio2"] = fmt(*r.ratio2); else j["ratio2"] = nullptr;
        j["fill_tets"] = r.fill_tets;
        j["fill_ratio"] = fmt(r.fill_ratio);
        j["fill_ratio_log2"] = fmt(r.fill_ratio_log2);
        j["status"] = r.ok ? "ok" : "failed";
        if (!r.ok) j["message"] = r.message;
        doc["rows"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

FillingReport fill_report(const TriangulatedSurface& s) { return fill(s).report; }

std::string fill_report_to_json(const FillingReport& r) {
    nlohmann::ordered_json doc;
    doc["schema"] = kReportSchema;
    doc["version"] = kVersion;
    doc["genus_sequence"] = r.genus_sequence;
    doc["loop_lengths"] = r.loop_lengths;
    doc["facet_counts"] = r.facet_counts;
    doc["ball_tets"] = r.ball_tets;
    doc["tet_count"] = r.tet_count;
    doc["ratio"] = fmt(r.ratio);
    doc["boundary_matches_input"] = r.boundary_matches_input;
    doc["elapsed_seconds"] = fmt(r.elapsed_seconds);
    return doc.dump(2) + "\n";
}

std::string fill_report_to_text(const FillingReport& r) {
    std::ostringstream os;
    os << "stage  genus  cut-length  facets\n";
    for (size_t i = 0; i < r.facet_counts.size(); ++i) {
        os << "  " << i << "      " << r.genus_sequence[i] << "      ";
        if (i < r.loop_lengths.size())
            os << r.loop_lengths[i];
        else
            os << "-";
        os << "          " << r.facet_counts[i] << "\n";
    }
    long long sum_len = 0;
    for (int l : r.loop_lengths) sum_len += l;
    os << "ball tets       " << r.ball_tets << " (= 4 * " << r.facet_counts.back() << ")\n";
    os << "filling tets    " << r.tet_count << " (= 4 * (" << r.facet_counts.front() << " + 2 * " << sum_len
       << "))\n";
    os << "ratio           " << fmt(r.ratio) << "\n";
    os << "boundary        " << (r.boundary_matches_input ? "restored" : "MISMATCH") << "\n";
    return os.str();
}

} // namespace systolica
