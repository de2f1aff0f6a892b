#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aquanim/app/spec_doc.hpp"
#include "aquanim/blocks.hpp"
#include "aquanim/chart_models.hpp"
#include "aquanim/error.hpp"
#include "aquanim/interpolators.hpp"
#include "aquanim/render.hpp"
#include "aquanim/transitions.hpp"
#include "aquanim/verify.hpp"

namespace py = pybind11;
using namespace aquanim;

namespace {

using RectTuple = std::tuple<double, double, double, double>;

Rect to_rect(const RectTuple& t) { return {std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t)}; }
RectTuple from_rect(const Rect& r) { return {r.x_min, r.x_max, r.y_min, r.y_max}; }

py::dict frame_dict(const Frame& f) {
    py::list prims;
    for (const auto& p : f.primitives) {
        py::dict d;
        switch (p.kind) {
            case PrimitiveKind::FilledRect: d["kind"] = "filled_rect"; break;
            case PrimitiveKind::StrokedRect: d["kind"] = "stroked_rect"; break;
            case PrimitiveKind::Line: d["kind"] = "line"; break;
            case PrimitiveKind::Label: d["kind"] = "label"; break;
        }
        if (p.kind == PrimitiveKind::Line) {
            d["p0"] = py::make_tuple(p.p0.x, p.p0.y);
            d["p1"] = py::make_tuple(p.p1.x, p.p1.y);
        } else if (p.kind == PrimitiveKind::Label) {
            d["anchor"] = py::make_tuple(p.p0.x, p.p0.y);
            d["text"] = p.text;
        } else {
            d["rect"] = from_rect(p.rect);
        }
        d["fill"] = p.fill.to_hex();
        d["stroke"] = p.stroke.to_hex();
        d["stroke_width"] = p.stroke_width;
        d["liquid"] = p.liquid;
        prims.append(std::move(d));
    }
    py::dict out;
    out["viewport"] = from_rect(f.viewport);
    out["tint"] = f.tint;
    out["primitives"] = std::move(prims);
    return out;
}

app::PlannedTransition plan_json(const std::string& doc, const std::string& base_dir) {
    return app::plan_document(app::parse_document(doc), app::DatasetPolicy{base_dir, false},
                              app::environment_palette());
}

}  // namespace

PYBIND11_MODULE(_aquanim, m) {
    m.doc() = "Area-preserving animated transitions for area-based charts";

    py::register_exception<Error>(m, "AquanimError", PyExc_ValueError);
    py::register_exception<app::SpecError>(m, "SpecError", PyExc_ValueError);

    m.def("ease", [](double t) { return ease(TimeParam(t)).value(); }, py::arg("t"));
    m.def("lerp", [](double v0, double v1, double u) { return lerp(v0, v1, EasedTime(u)); },
          py::arg("v0"), py::arg("v1"), py::arg("u"));
    m.def("hyperbolic_extent", &hyperbolic_extent, py::arg("area"), py::arg("length"));
    m.def("centered_pair",
          [](double c0, double c1, double h, double u) {
              const auto e = centered_pair(c0, c1, h, EasedTime(u));
              return std::make_pair(e.lo, e.hi);
          },
          py::arg("c0"), py::arg("c1"), py::arg("extent"), py::arg("u"));

    m.def("rect_area", [](const RectTuple& r) { return rect_area(to_rect(r)); });
    m.def("overlap_area", [](const RectTuple& a, const RectTuple& b) { return overlap_area(to_rect(a), to_rect(b)); });
    m.def("partition_intervals", [](const std::vector<double>& a, const std::vector<double>& b) {
        return partition_intervals(a, b);
    });

    m.def("classify_reshape", [](const RectTuple& init, const RectTuple& final) {
        const auto spec = classify_reshape(to_rect(init), to_rect(final));
        py::dict d;
        d["case"] = std::string(to_string(spec.case_code));
        d["piston_axis"] = spec.piston_axis == Axis::X ? "x" : "y";
        d["staged"] = spec.staging != Staging::Direct;
        return d;
    });
    m.def("reshape_at", [](const RectTuple& init, const RectTuple& final, double u) {
        return from_rect(reshape_at(classify_reshape(to_rect(init), to_rect(final)), EasedTime(u)).rect);
    });
    m.def("vertex_lerp", [](const RectTuple& init, const RectTuple& final, double u) {
        return from_rect(vertex_lerp(to_rect(init), to_rect(final), EasedTime(u)));
    });
    m.def("transfer_at",
          [](const std::vector<double>& widths, const std::vector<double>& level0,
             const std::vector<double>& level1, double u) {
              if (widths.size() != level0.size() || widths.size() != level1.size()) {
                  throw Error(ErrorCode::DimensionMismatch, "widths and levels must have the same length");
              }
              std::vector<TransferContainer> c;
              for (std::size_t i = 0; i < widths.size(); ++i) c.push_back({widths[i], level0[i], level1[i]});
              return transfer_at(TransferSpec::create(std::move(c)), EasedTime(u));
          },
          py::arg("widths"), py::arg("level0"), py::arg("level1"), py::arg("u"));
    m.def("segments_shift_at",
          [](const std::vector<std::pair<std::string, double>>& segments, const std::string& selected, double u) {
              SegmentStack s;
              for (const auto& [id, h] : segments) s.segments.push_back({id, h});
              std::vector<std::pair<std::string, double>> out;
              for (const auto& seg : segments_shift_at(s, selected, EasedTime(u)).segments) {
                  out.emplace_back(seg.liquid, seg.height);
              }
              return out;
          },
          py::arg("segments"), py::arg("selected"), py::arg("u"));

    m.def("histogram_from_samples",
          [](const std::vector<double>& values, std::size_t bins, double lo, double hi) {
              const auto h = histogram_from_samples(values, bins, lo, hi);
              return std::make_pair(h.edges, h.densities);
          },
          py::arg("values"), py::arg("bins"), py::arg("lo"), py::arg("hi"));
    m.def("probability_table",
          [](const std::vector<std::string>& labels, const std::vector<std::vector<std::int64_t>>& counts) {
              const auto pt = probability_table(make_confusion_matrix(labels, counts));
              py::dict d;
              d["joint"] = pt.joint;
              d["marginal_pred"] = pt.marginal_pred;
              d["marginal_obs"] = pt.marginal_obs;
              d["cond_obs_given_pred"] = pt.cond_obs_given_pred;
              d["cond_pred_given_obs"] = pt.cond_pred_given_obs;
              return d;
          },
          py::arg("labels"), py::arg("counts"));

    py::class_<app::PlannedTransition>(m, "Transition")
        .def_property_readonly("kind", [](const app::PlannedTransition& p) { return p.script.kind; })
        .def_property_readonly("stages",
                               [](const app::PlannedTransition& p) {
                                   std::vector<std::string> out;
                                   for (const auto& s : p.script.stages) out.emplace_back(to_string(s.kind));
                                   return out;
                               })
        .def("evaluate", [](const app::PlannedTransition& p, double t) { return frame_dict(evaluate(p.script, TimeParam(t))); },
             py::arg("t"))
        .def("verify",
             [](const app::PlannedTransition& p, std::size_t samples, double tolerance) {
                 VerifyOptions o;
                 o.samples = samples;
                 o.tolerance = tolerance;
                 const auto r = verify_script(p.script, o);
                 py::dict d;
                 d["ok"] = r.ok();
                 d["frames_checked"] = r.frames_checked;
                 d["max_area_error"] = r.max_area_error;
                 if (r.violation) {
                     d["check"] = r.violation->check;
                     d["t"] = r.violation->t;
                     d["liquid"] = r.violation->liquid;
                     d["detail"] = r.violation->detail;
                 }
                 return d;
             },
             py::arg("samples") = 101, py::arg("tolerance") = 1e-9)
        .def("keyframes",
             [](const app::PlannedTransition& p) {
                 return emit_keyframes_doc(sample_frames(p.script, p.render), p.render);
             })
        .def("svg_frames", [](const app::PlannedTransition& p) {
            std::vector<std::string> out;
            for (const auto& f : sample_frames(p.script, p.render)) out.push_back(emit_svg(f, p.render));
            return out;
        });

    m.def("plan", &plan_json, py::arg("document"), py::arg("base_dir") = ".",
          "Plans a transition from a JSON document string.");
}
