#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "systolica/generators.hpp"
#include "systolica/mesh_io.hpp"
#include "systolica/metric.hpp"
#include "systolica/simplex.hpp"
#include "systolica/surgery.hpp"
#include "systolica/systole.hpp"
#include "systolica/verify.hpp"
#include "systolica/version.hpp"

namespace {

using namespace systolica;

struct CommonOpts {
    std::string input;
    std::string output;
    std::string format = "tri";
    bool json = false;
    bool csv = false;
    std::uint64_t seed = 0;
    int subdivide_rounds = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
    if (with_input) cmd->add_option("--input", o.input, "input file")->required();
    cmd->add_option("--output", o.output, "output file");
    cmd->add_option("--format", o.format, "mesh format: tri|off")->check(CLI::IsMember({"tri", "off"}));
    cmd->add_flag("--json", o.json, "emit JSON");
    cmd->add_flag("--csv", o.csv, "emit CSV");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--subdivide", o.subdivide_rounds, "edge-midpoint subdivision pre-pass rounds")
        ->check(CLI::NonNegativeNumber);
}

TriangulatedSurface load_input(const CommonOpts& o, bool allow_boundary = false) {
    TriangulatedSurface s = load_surface(o.input, format_from_name(o.format), allow_boundary);
    if (o.subdivide_rounds > 0) {
        std::cerr << "note: input subdivided " << o.subdivide_rounds
                  << " round(s); counts refer to the refined surface\n";
        return subdivide(s, o.subdivide_rounds);
    }
    return s;
}

std::string loop_str(const EdgeLoop& loop) {
    std::string out;
    for (size_t i = 0; i < loop.vertices.size(); ++i)
        out += (i ? " " : "") + std::to_string(loop.vertices[i]);
    return out;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (!o.output.empty())
        write_file(o.output, text);
    else
        std::cout << text;
}

int cmd_info(const CommonOpts& o) {
    TriangulatedSurface s = load_input(o, /*allow_boundary=*/true);
    auto inv = topology_invariants(s);
    auto circles = boundary_components(s);
    if (o.json) {
        nlohmann::ordered_json j;
        j["schema"] = kReportSchema;
        j["vertices"] = inv.vertices;
        j["edges"] = inv.edges;
        j["facets"] = inv.facets;
        j["chi"] = inv.chi;
        j["orientable"] = inv.orientable;
        if (inv.genus) j["genus"] = *inv.genus; else j["genus"] = nullptr;
        j["boundary_components"] = circles.size();
        emit(o, j.dump(2) + "\n");
    } else {
        std::string text;
        text += "vertices    " + std::to_string(inv.vertices) + "\n";
        text += "edges       " + std::to_string(inv.edges) + "\n";
        text += "facets      " + std::to_string(inv.facets) + "\n";
        text += "chi         " + std::to_string(inv.chi) + "\n";
        text += "orientable  " + std::string(inv.orientable ? "yes" : "no") + "\n";
        text += "genus       " + (inv.genus ? std::to_string(*inv.genus) : std::string("undefined")) + "\n";
        text += "boundary    " + std::to_string(circles.size()) + " component(s)\n";
        emit(o, text);
    }
    return 0;
}

int cmd_systole(const CommonOpts& o, bool homological) {
    TriangulatedSurface s = load_input(o);
    SystoleResult r = homological ? homological_systole(s) : homotopy_systole(s);
    if (o.json) {
        nlohmann::ordered_json j;
        j["schema"] = kReportSchema;
        j[homological ? "sys_h" : "sys"] = r.length;
        j["loop"] = r.loop.vertices;
        emit(o, j.dump(2) + "\n");
    } else {
        emit(o, std::to_string(r.length) + "  (" + loop_str(r.loop) + ")\n");
    }
    return 0;
}

int cmd_fill(const CommonOpts& o) {
    TriangulatedSurface s = load_input(o);
    FillingReport r = fill_report(s);
    emit(o, o.json ? fill_report_to_json(r) : fill_report_to_text(r));
    return 0;
}

int cmd_verify(const CommonOpts& o) {
    auto corpus = standard_corpus(o.seed);
    VerifyOptions opts;
    opts.seed = o.seed;
    VerifyOutput out = verify_corpus(corpus, opts);

    std::string rendered;
    if (o.json)
        rendered = rows_to_json(out, o.seed);
    else
        rendered = rows_to_csv(out, o.seed); // CSV is the default table
    emit(o, rendered);
    if (!out.all_ok) {
        for (const auto& r : out.rows)
            if (!r.ok) std::cerr << "row " << r.name << " failed: " << r.message << "\n";
        return 3;
    }
    return 0;
}

int cmd_generate(const CommonOpts& o, const std::string& kind, const GenerateParams& p,
                 const std::string& input_file) {
    require(!o.output.empty(), ErrCode::InvalidParams, "generate needs --output");
    TriangulatedSurface input_storage = tetra_sphere();
    const TriangulatedSurface* input = nullptr;
    if (!input_file.empty()) {
        input_storage = load_surface(input_file, format_from_name(o.format));
        input = &input_storage;
    }
    TriangulatedSurface s = generate(kind, p, o.seed, input);
    save_surface(s, o.output, MeshFormat::Tri);
    std::cerr << "wrote " << o.output << " (V=" << s.vertex_count() << " F=" << s.face_count() << ")\n";
    return 0;
}

int cmd_twist(const CommonOpts& o, int offset, int loop_choice) {
    require(!o.output.empty(), ErrCode::InvalidParams, "twist needs --output");
    TriangulatedSurface s = load_input(o);
    TriangulatedSurface t = twist_generator(s, offset, loop_choice);
    save_surface(t, o.output, MeshFormat::Tri);
    std::cerr << "wrote " << o.output << "\n";
    return 0;
}

int cmd_straighten(const CommonOpts& o) {
    std::string base = std::filesystem::path(o.input).parent_path().string();
    LoadedPath lp = load_path_file(o.input, base);
    StraighteningResult r = project_to_skeleton(lp.path);
    if (o.json) {
        nlohmann::ordered_json j;
        j["schema"] = kReportSchema;
        j["surface"] = lp.surface_file;
        j["input_length"] = r.input_length;
        j["count_length"] = r.count_length;
        j["ratio"] = r.ratio;
        j["loop"] = r.loop.vertices;
        j["support"] = std::vector<int>(r.support_set.begin(), r.support_set.end());
        emit(o, j.dump(2) + "\n");
    } else {
        std::string text;
        text += "input length   " + std::to_string(r.input_length) + "\n";
        text += "edge loop      (" + loop_str(r.loop) + ")\n";
        text += "count length   " + std::to_string(r.count_length) + "\n";
        text += "ratio          " + std::to_string(r.ratio) + "\n";
        emit(o, text);
    }
    return 0;
}

int cmd_fullness(const CommonOpts& o) {
    EuclideanSimplex s = load_simplex(o.input);
    double vol = simplex_volume(s);
    double diam = simplex_diameter(s);
    double theta = fullness(s);
    if (o.json) {
        nlohmann::ordered_json j;
        j["schema"] = kReportSchema;
        j["ambient_dim"] = s.ambient_dim();
        j["dim"] = s.dim();
        j["volume"] = vol;
        j["diameter"] = diam;
        j["fullness"] = theta;
        emit(o, j.dump(2) + "\n");
    } else {
        char buf[160];
        std::snprintf(buf, sizeof buf, "volume    %.12g\ndiameter  %.12g\nfullness  %.12g\n", vol, diam,
                      theta);
        emit(o, buf);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"systolica: discrete systoles, fillings and simplex fullness for triangulated surfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("systolica ") + systolica::kVersion);

    CommonOpts o_info, o_sys, o_hsys, o_fill, o_verify, o_gen, o_twist, o_straight, o_full;

    auto* c_info = app.add_subcommand("info", "topological invariants of a surface");
    add_common(c_info, o_info);
    auto* c_sys = app.add_subcommand("systole", "shortest non-contractible edge loop");
    add_common(c_sys, o_sys);
    auto* c_hsys = app.add_subcommand("hsystole", "shortest Z/2-homologically nontrivial edge loop");
    add_common(c_hsys, o_hsys);
    auto* c_fill = app.add_subcommand("fill", "cut-and-cone filling with facet-count report");
    add_common(c_fill, o_fill);
    auto* c_verify = app.add_subcommand("verify", "run the verification corpus");
    add_common(c_verify, o_verify, /*with_input=*/false);

    auto* c_gen = app.add_subcommand("generate", "produce a corpus surface");
    std::string gen_kind, gen_input;
    GenerateParams gp;
    c_gen->add_option("--kind", gen_kind, "sphere-tetra|csaszar-torus|genus2-small|grid-torus|genus-polygon|subdivide|twist|random-flips")
        ->required();
    c_gen->add_option("--k", gp.k, "grid size for grid-torus");
    c_gen->add_option("--genus", gp.genus, "genus for genus-polygon");
    c_gen->add_option("--rounds", gp.rounds, "subdivision rounds");
    c_gen->add_option("--offset", gp.offset, "twist offset");
    c_gen->add_option("--loop-choice", gp.loop_choice, "which candidate loop to twist along");
    c_gen->add_option("--count", gp.count, "number of random flips");
    c_gen->add_option("--input", gen_input, "input surface for transforming kinds");
    add_common(c_gen, o_gen, /*with_input=*/false);

    auto* c_twist = app.add_subcommand("twist", "Dehn twist along a shortest nonseparating loop");
    int twist_offset = 0, twist_loop = 0;
    c_twist->add_option("--offset", twist_offset, "cyclic regluing offset")->required();
    c_twist->add_option("--loop-choice", twist_loop, "which candidate loop to twist along");
    add_common(c_twist, o_twist);

    auto* c_straight = app.add_subcommand("straighten", "project a piecewise-straight closed path to the 1-skeleton");
    add_common(c_straight, o_straight);
    auto* c_full = app.add_subcommand("fullness", "volume, diameter and fullness of a simplex");
    add_common(c_full, o_full);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_info->parsed()) return cmd_info(o_info);
        if (c_sys->parsed()) return cmd_systole(o_sys, /*homological=*/false);
        if (c_hsys->parsed()) return cmd_systole(o_hsys, /*homological=*/true);
        if (c_fill->parsed()) return cmd_fill(o_fill);
        if (c_verify->parsed()) return cmd_verify(o_verify);
        if (c_gen->parsed()) return cmd_generate(o_gen, gen_kind, gp, gen_input);
        if (c_twist->parsed()) return cmd_twist(o_twist, twist_offset, twist_loop);
        if (c_straight->parsed()) return cmd_straighten(o_straight);
        if (c_full->parsed()) return cmd_fullness(o_full);
    } catch (const systolica::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
