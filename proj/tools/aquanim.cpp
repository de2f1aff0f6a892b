#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "aquanim/app/commands.hpp"
#include "aquanim/app/service.hpp"

int main(int argc, char** argv) {
    using namespace aquanim::app;

    CLI::App app{"Area-preserving animated transitions for area-based charts"};
    app.require_subcommand(1);

    std::string spec;
    std::string out;
    std::string format = "frames";
    auto* render = app.add_subcommand("render", "Render a transition document");
    render->add_option("--spec", spec, "Transition document (JSON)")->required();
    render->add_option("--out", out, "Output directory (frames) or file")->required();
    render->add_option("--format", format, "frames, animated-svg or keyframes")
        ->check(CLI::IsMember({"frames", "animated-svg", "keyframes"}));

    std::size_t samples = 101;
    double tolerance = 1e-9;
    auto* verify = app.add_subcommand("verify", "Check conservation, occlusion, endpoints and continuity");
    verify->add_option("--spec", spec, "Transition document (JSON)")->required();
    verify->add_option("--samples", samples, "Uniform time samples");
    verify->add_option("--tolerance", tolerance, "Relative area / coordinate tolerance");

    ServiceConfig service;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP keyframe service");
    serve_cmd->add_option("--bind", service.bind, "Bind address");
    serve_cmd->add_option("--port", service.port, "Port");
    serve_cmd->add_option("--data-dir", service.data_dir, "Directory that dataset paths resolve in");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitSpecError;
    }

    if (*render) {
        OutputFormat f = OutputFormat::Frames;
        parse_format(format, f);
        return cmd_render(spec, out, f, std::cerr);
    }
    if (*verify) return cmd_verify(spec, samples, tolerance, std::cout);
    if (!serve(service)) {
        std::cerr << "error: cannot bind " << service.bind << ':' << service.port << '\n';
        return 1;
    }
    return 0;
}
