#include "aquanim/app/commands.hpp"

#include <fstream>
#include <functional>

#include "aquanim/app/spec_doc.hpp"
#include "aquanim/error.hpp"
#include "aquanim/render.hpp"
#include "aquanim/verify.hpp"

namespace aquanim::app {

namespace fs = std::filesystem;

bool parse_format(const std::string& name, OutputFormat& out) {
    if (name == "frames") out = OutputFormat::Frames;
    else if (name == "animated-svg") out = OutputFormat::AnimatedSvg;
    else if (name == "keyframes") out = OutputFormat::Keyframes;
    else return false;
    return true;
}

namespace {

/// Runs `body` and maps failures onto exit codes.
int guarded(std::ostream& log, const std::function<int()>& body) {
    try {
        return body();
    } catch (const SpecError& e) {
        log << "error: " << e.code() << ": " << e.detail() << '\n';
        return kExitSpecError;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) {
            log << "error: " << e.what() << '\n';
            return kExitSpecError;
        }
        log << "error: planning failed: " << e.what() << '\n';
        return kExitEngineError;
    }
}

PlannedTransition plan_file(const fs::path& spec) {
    const auto doc = load_document(spec);
    DatasetPolicy policy{spec.has_parent_path() ? spec.parent_path() : fs::path("."), false};
    return plan_document(doc, policy, environment_palette());
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SpecError("IoError", "cannot write '" + path.string() + "'");
    out << bytes;
    if (!out) throw SpecError("IoError", "failed writing '" + path.string() + "'");
}

}  // namespace

int cmd_render(const fs::path& spec, const fs::path& out, OutputFormat format, std::ostream& log) {
    return guarded(log, [&] {
        const PlannedTransition planned = plan_file(spec);
        const auto frames = sample_frames(planned.script, planned.render);
        switch (format) {
            case OutputFormat::Frames: {
                std::error_code ec;
                fs::create_directories(out, ec);
                if (ec) throw SpecError("IoError", "cannot create '" + out.string() + "': " + ec.message());
                const std::size_t digits = std::max<std::size_t>(3, std::to_string(frames.size() - 1).size());
                for (std::size_t i = 0; i < frames.size(); ++i) {
                    std::string name = std::to_string(i);
                    name.insert(0, digits - name.size(), '0');
                    write_file(out / (name + ".svg"), emit_svg(frames[i], planned.render));
                }
                break;
            }
            case OutputFormat::AnimatedSvg:
                write_file(out, emit_animated_svg(frames, planned.render));
                break;
            case OutputFormat::Keyframes:
                write_file(out, emit_keyframes_doc(frames, planned.render));
                break;
        }
        log << "rendered " << frames.size() << " frames of '" << planned.script.kind << "' to "
            << out.string() << '\n';
        return kExitOk;
    });
}

int cmd_verify(const fs::path& spec, std::size_t samples, double tolerance, std::ostream& log) {
    return guarded(log, [&] {
        if (samples < 2) throw SpecError("ValidationError", "--samples must be at least 2");
        if (!(tolerance > 0.0)) throw SpecError("ValidationError", "--tolerance must be positive");
        const PlannedTransition planned = plan_file(spec);
        VerifyOptions options;
        options.samples = samples;
        options.tolerance = tolerance;
        const VerifyReport report = verify_script(planned.script, options);
        if (report.violation) {
            const auto& v = *report.violation;
            log << "FAIL " << v.check << " at t=" << v.t;
            if (!v.liquid.empty()) log << " liquid '" << v.liquid << "'";
            log << ": " << v.detail << '\n';
            return kExitViolation;
        }
        log << "PASS " << planned.script.kind << ": " << report.frames_checked
            << " frames, max relative area error " << report.max_area_error << '\n';
        return kExitOk;
    });
}

}  // namespace aquanim::app
