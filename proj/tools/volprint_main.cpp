// Copyright 2026 The volprint Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "volprint/cli/commands.hpp"

namespace {

using namespace volprint;
using namespace volprint::cli;

struct CommonFlags {
    std::string manifest;
    std::string out;
    unsigned threads = 0;
    int bit_depth = 0;
    std::string normalize;

    void attach(CLI::App* app)
    {
        app->add_option("--manifest,-m", manifest, "Run manifest (JSON)");
        app->add_option("--out,-o", out, "Output directory (overrides the manifest)");
        app->add_option("--threads,-j", threads, "Worker threads, 0 = one per core")->capture_default_str();
        app->add_option("--bit-depth", bit_depth, "PNG bit depth for outputs")->check(CLI::IsMember({8, 16}));
        app->add_option("--normalize", normalize, "Projection display scaling")->check(CLI::IsMember({"max", "auto"}));
    }

    [[nodiscard]] RunOptions options() const
    {
        RunOptions o;
        if (!manifest.empty()) {
            o.manifest = manifest;
        }
        if (!out.empty()) {
            o.out_dir = out;
        }
        o.threads = threads;
        if (bit_depth != 0) {
            o.bit_depth = bit_depth;
        }
        if (!normalize.empty()) {
            o.normalize = parse_normalize_mode(normalize);
        }
        return o;
    }
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"volprint: multi-view RGB voxel design for printed film-stack displays"};
    app.require_subcommand(1);

    CommonFlags design_flags;
    auto* design = app.add_subcommand("design", "Design the voxel volume and write one image per film");
    design_flags.attach(design);

    CommonFlags project_flags;
    std::vector<std::string> views;
    std::string project_layers;
    auto* project = app.add_subcommand("project", "Simulate the projected views and report crosstalk");
    project_flags.attach(project);
    project->add_option("--views", views, "Pattern labels to render (default: all)")->delimiter(',');
    project->add_option("--layers", project_layers, "Load the volume from layer_NNN.png files instead of designing it");

    CommonFlags slice_flags;
    std::string cloud;
    auto* slice = app.add_subcommand("slice", "Slice an ASCII point cloud into film images");
    slice_flags.attach(slice);
    slice->add_option("--cloud,cloud", cloud, "Point cloud: one 'x y z r g b' line per point")->required();

    CommonFlags sim_flags;
    std::vector<double> thetas;
    std::string sweep;
    std::vector<std::size_t> sweep_counts;
    std::string sim_layers;
    std::string sim_pattern;
    auto* simulate = app.add_subcommand("simulate", "Render oblique views of the film stack or run film-sandwich sweeps");
    sim_flags.attach(simulate);
    simulate->add_option("--theta", thetas, "View angles about Y in degrees, e.g. --theta=-30,0,30")->delimiter(',');
    simulate->add_option("--sweep", sweep, "Film-sandwich sweep")->check(CLI::IsMember({"uv", "vis", "both"}));
    simulate->add_option("--sweep-counts", sweep_counts, "Clear-film counts for the sweep")->delimiter(',');
    simulate->add_option("--layers", sim_layers, "Film images to render instead of designing from the manifest");
    simulate->add_option("--pattern", sim_pattern, "Printed pattern for the sweep (default: RGB discs)");

    CommonFlags info_flags;
    auto* info = app.add_subcommand("info", "Print the resolved configuration and stack metrics");
    info_flags.attach(info);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (design->parsed()) {
            return cmd_design(design_flags.options());
        }
        if (project->parsed()) {
            ProjectOptions popts;
            popts.views = views;
            if (!project_layers.empty()) {
                popts.layers_dir = project_layers;
            }
            return cmd_project(project_flags.options(), popts);
        }
        if (slice->parsed()) {
            return cmd_slice(slice_flags.options(), cloud);
        }
        if (simulate->parsed()) {
            SimulateOptions sopts;
            sopts.thetas = thetas;
            if (!sweep.empty()) {
                static const std::map<std::string, SweepSelection> kinds{
                    {"uv", SweepSelection::uv}, {"vis", SweepSelection::visible}, {"both", SweepSelection::both}};
                sopts.sweep = kinds.at(sweep);
            }
            if (!sweep_counts.empty()) {
                sopts.sweep_counts = sweep_counts;
            }
            if (!sim_layers.empty()) {
                sopts.layers_dir = sim_layers;
            }
            if (!sim_pattern.empty()) {
                sopts.pattern = sim_pattern;
            }
            return cmd_simulate(sim_flags.options(), sopts);
        }
        return cmd_info(info_flags.options());
    } catch (const volprint::Error& e) {
        std::cerr << "volprint: error: " << e.what() << '\n';
        return e.code() == Errc::invalid_argument ? kExitValidation : kExitIo;
    }
}
