#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "aquanim/blocks.hpp"
#include "aquanim/error.hpp"
#include "oracle.hpp"

using namespace aquanim;

namespace {

void expect_rect_near(const Rect& got, const Rect& want, double tol = 1e-12) {
    EXPECT_NEAR(got.x_min, want.x_min, tol);
    EXPECT_NEAR(got.x_max, want.x_max, tol);
    EXPECT_NEAR(got.y_min, want.y_min, tol);
    EXPECT_NEAR(got.y_max, want.y_max, tol);
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::ParseError;
}

const ScenePrimitive* find_line_at_y(const std::vector<ScenePrimitive>& prims, double y) {
    for (const auto& p : prims) {
        if (p.kind == PrimitiveKind::Line && std::abs(p.p0.y - y) < 1e-12 && std::abs(p.p1.y - y) < 1e-12) {
            return &p;
        }
    }
    return nullptr;
}

}  // namespace

// ─── fill ────────────────────────────────────────────────────────────────────

TEST(FillAt, EmptyingExample) {
    const auto spec = make_fill_spec({0, 1, 0, 4}, Axis::Y, 3, 1);
    const auto mid = fill_at(spec, EasedTime(0.5));
    expect_rect_near(mid.rect, {0, 1, 0, 2});
    EXPECT_NE(find_line_at_y(mid.decoration, 1.0), nullptr);
    EXPECT_EQ(mid.decoration.front().kind, PrimitiveKind::StrokedRect);

    const auto start = fill_at(spec, EasedTime(0.0));
    EXPECT_DOUBLE_EQ(start.rect.height(), 3.0);
    EXPECT_NE(find_line_at_y(start.decoration, 1.0), nullptr);
    EXPECT_DOUBLE_EQ(fill_at(spec, EasedTime(1.0)).rect.height(), 1.0);
}

TEST(FillAt, FillingShowsStartLevel) {
    const auto spec = make_fill_spec({0, 1, 0, 4}, Axis::Y, 1, 3);
    const auto mid = fill_at(spec, EasedTime(0.25));
    expect_rect_near(mid.rect, {0, 1, 0, 1.5});
    EXPECT_NE(find_line_at_y(mid.decoration, 1.0), nullptr);
}

TEST(FillAt, HorizontalAxis) {
    const auto spec = make_fill_spec({2, 6, 0, 1}, Axis::X, 0, 4);
    expect_rect_near(fill_at(spec, EasedTime(0.5)).rect, {2, 4, 0, 1});
}

TEST(FillAt, RejectsLevelsOutsideContainer) {
    EXPECT_EQ(code_of([] { make_fill_spec({0, 1, 0, 4}, Axis::Y, 5, 1); }), ErrorCode::LevelOutOfRange);
    EXPECT_EQ(code_of([] { make_fill_spec({0, 1, 0, 4}, Axis::Y, -1, 1); }), ErrorCode::LevelOutOfRange);
}

// ─── shift / translate ───────────────────────────────────────────────────────

TEST(ShiftAt, Examples) {
    expect_rect_near(shift_at({0, 1, 0, 1}, {0, 1, 0, 4}, Axis::Y, 2, EasedTime(0.5)), {0, 1, 1, 2});
    EXPECT_EQ(shift_at({0, 1, 0, 1}, {0, 1, 0, 4}, Axis::Y, 2, EasedTime(0.0)), (Rect{0, 1, 0, 1}));
    EXPECT_EQ(shift_at({0, 1, 0, 1}, {0, 1, 0, 4}, Axis::Y, 0, EasedTime(0.7)), (Rect{0, 1, 0, 1}));
}

TEST(ShiftAt, RejectsEscape) {
    EXPECT_EQ(code_of([] { shift_at({0, 1, 0, 1}, {0, 1, 0, 4}, Axis::Y, 3.5, EasedTime(0.5)); }),
              ErrorCode::EscapesContainer);
}

TEST(TranslateAt, KeepsArea) {
    oracle::Gen gen(31);
    for (int i = 0; i < 200; ++i) {
        const Rect r = gen.rect();
        const Rect m = translate_at(r, gen.uniform(-5, 5), gen.uniform(-5, 5), EasedTime(gen.uniform(0, 1)));
        EXPECT_NEAR(m.width(), r.width(), 1e-12);
        EXPECT_NEAR(m.height(), r.height(), 1e-12);
    }
}

// ─── reshape ─────────────────────────────────────────────────────────────────

TEST(ClassifyReshape, Examples) {
    auto s = classify_reshape({0, 1, 0, 4}, {0, 4, 0, 1});
    EXPECT_EQ(s.case_code, ReshapeCase::L_H);
    EXPECT_EQ(s.piston_axis, Axis::X);
    EXPECT_EQ(s.staging, Staging::Direct);

    EXPECT_EQ(classify_reshape({0, 2, 0, 2}, {0, 2, 0, 2}).case_code, ReshapeCase::Identity);

    s = classify_reshape({0, 1, 0, 4}, {2, 6, 1.5, 2.5});
    EXPECT_EQ(s.case_code, ReshapeCase::LL_HH);
    EXPECT_NE(s.staging, Staging::Direct);
}

TEST(ClassifyReshape, OtherCases) {
    EXPECT_EQ(classify_reshape({0, 1, 0, 4}, {3, 4, 0, 4}).case_code, ReshapeCase::Translate);
    // Three moving edges: the pair becomes the pistons so only one edge is hyperbolic.
    auto s = classify_reshape({0, 2, 0, 2}, {0, 4, 0.5, 1.5});
    EXPECT_EQ(s.case_code, ReshapeCase::LL_H);
    EXPECT_EQ(s.piston_axis, Axis::Y);
    s = classify_reshape({0, 2, 0, 2}, {-1, 3, 0, 1});
    EXPECT_EQ(s.case_code, ReshapeCase::LL_H);
    EXPECT_EQ(s.piston_axis, Axis::X);
}

TEST(ClassifyReshape, TieGoesToX) {
    const auto s = classify_reshape({0, 1, 0, 4}, {0, 2, 0, 2});
    EXPECT_EQ(s.piston_axis, Axis::X);
}

TEST(ClassifyReshape, Errors) {
    EXPECT_EQ(code_of([] { classify_reshape({0, 1, 0, 4}, {0, 1, 0, 5}); }), ErrorCode::AreaMismatch);
    EXPECT_EQ(code_of([] { classify_reshape({0, 0, 0, 4}, {1, 1, 0, 5}); }), ErrorCode::DegenerateExtent);
}

TEST(ReshapeAt, WorkedCases) {
    const auto lh = classify_reshape({0, 1, 0, 4}, {0, 4, 0, 1});
    const auto mid = reshape_at(lh, EasedTime(0.5));
    expect_rect_near(mid.rect, {0, 2.5, 0, 1.6});
    EXPECT_NEAR(rect_area(mid.rect), 4.0, 1e-12);
    ASSERT_FALSE(mid.decoration.empty());
    EXPECT_EQ(mid.decoration.front().kind, PrimitiveKind::StrokedRect);
    EXPECT_EQ(mid.decoration.front().rect, (Rect{0, 4, 0, 4}));

    const auto llhh = classify_reshape({0, 1, 0, 4}, {2, 6, 1.5, 2.5});
    const auto r = reshape_at(llhh, EasedTime(0.5)).rect;
    expect_rect_near(r, {1, 3.5, 1.2, 2.8});
    EXPECT_NEAR(rect_area(r), 4.0, 1e-12);

    const auto id = classify_reshape({0, 2, 0, 2}, {0, 2, 0, 2});
    for (double u : {0.0, 0.3, 1.0}) EXPECT_EQ(reshape_at(id, EasedTime(u)).rect, (Rect{0, 2, 0, 2}));
}

TEST(ReshapeAt, VertexLerpContrast) {
    const Rect naive = vertex_lerp({0, 1, 0, 4}, {0, 4, 0, 1}, EasedTime(0.5));
    EXPECT_EQ(naive, (Rect{0, 2.5, 0, 2.5}));
    EXPECT_EQ(rect_area(naive), 6.25);
}

TEST(ReshapeAt, ConservesAreaOnRandomPairs) {
    oracle::Gen gen(32);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto [a, b] = gen.equal_area_pair();
        const double area = oracle::area(a);
        const auto spec = classify_reshape(a, b);
        for (int i = 0; i <= 100; ++i) {
            const Rect r = reshape_at(spec, ease(i / 100.0)).rect;
            ASSERT_NEAR(oracle::area(r), area, 1e-9 * area) << trial << " t=" << i;
        }
        EXPECT_EQ(reshape_at(spec, EasedTime(0.0)).rect, a);
        EXPECT_EQ(reshape_at(spec, EasedTime(1.0)).rect, b);
    }
}

TEST(ReshapeAt, PistonEdgesMoveLinearly) {
    oracle::Gen gen(33);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [a, b] = gen.equal_area_pair();
        const auto spec = classify_reshape(a, b);
        if (spec.case_code == ReshapeCase::Identity || spec.case_code == ReshapeCase::Translate) continue;
        const double u = gen.uniform(0, 1);
        const Rect r = reshape_at(spec, EasedTime(u)).rect;
        if (spec.piston_axis == Axis::X) {
            EXPECT_NEAR(r.x_min, (1 - u) * a.x_min + u * b.x_min, 1e-12);
            EXPECT_NEAR(r.x_max, (1 - u) * a.x_max + u * b.x_max, 1e-12);
        } else {
            EXPECT_NEAR(r.y_min, (1 - u) * a.y_min + u * b.y_min, 1e-12);
            EXPECT_NEAR(r.y_max, (1 - u) * a.y_max + u * b.y_max, 1e-12);
        }
    }
}

TEST(ReshapePhases, StagedCaseTranslatesThenReshapes) {
    const auto spec = classify_reshape({0, 1, 0, 4}, {2, 6, 1.5, 2.5});
    const auto phases = reshape_phases(spec);
    ASSERT_EQ(phases.size(), 2u);
    EXPECT_EQ(phases[0].kind, ReshapePhase::Kind::Translate);
    EXPECT_EQ(phases[1].kind, ReshapePhase::Kind::Reshape);
    EXPECT_EQ(phases[0].from, spec.init);
    EXPECT_EQ(phases[1].to, spec.final);
    EXPECT_EQ(phases[0].to, phases[1].from);
    EXPECT_NEAR(phases[0].to.width(), 1.0, 1e-12);
    const auto inner = classify_reshape(phases[1].from, phases[1].to);
    EXPECT_NE(inner.case_code, ReshapeCase::LL_HH);

    auto reverse = spec;
    reverse.staging = Staging::ReshapeThenTranslate;
    const auto rp = reshape_phases(reverse);
    ASSERT_EQ(rp.size(), 2u);
    EXPECT_EQ(rp[0].kind, ReshapePhase::Kind::Reshape);
    EXPECT_EQ(rp[1].kind, ReshapePhase::Kind::Translate);
    EXPECT_EQ(rp[0].from, spec.init);
    EXPECT_EQ(rp[1].to, spec.final);
}

TEST(ReshapePhases, DirectIsSinglePhase) {
    EXPECT_EQ(reshape_phases(classify_reshape({0, 1, 0, 4}, {0, 4, 0, 1})).size(), 1u);
}

// ─── communicating containers ────────────────────────────────────────────────

TEST(TransferAt, Examples) {
    const auto s = TransferSpec::create({{1, 3, 1}, {2, 1, 2}, {1, 1, 1}});
    const auto mid = transfer_at(s, EasedTime(0.5));
    EXPECT_EQ(mid, (std::vector<double>{2, 1.5, 1}));
    EXPECT_DOUBLE_EQ(1 * mid[0] + 2 * mid[1] + 1 * mid[2], 6.0);
    EXPECT_DOUBLE_EQ(s.total_area(), 6.0);

    const auto two = TransferSpec::create({{1, 4, 1}, {1, 0, 3}});
    EXPECT_EQ(transfer_at(two, EasedTime(0.5)), (std::vector<double>{2.5, 1.5}));
    EXPECT_EQ(transfer_at(two, EasedTime(0.0)), (std::vector<double>{4, 0}));
}

TEST(TransferAt, Errors) {
    EXPECT_EQ(code_of([] { TransferSpec::create({{1, 4, 1}, {1, 0, 2}}); }), ErrorCode::AreaMismatch);
    EXPECT_EQ(code_of([] { TransferSpec::create({{0, 1, 1}}); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { TransferSpec::create({{1, -1, 1}, {1, 2, 0}}); }), ErrorCode::LevelOutOfRange);
}

TEST(TransferAt, RandomSpecsConserveAndStayMonotone) {
    oracle::Gen gen(34);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = gen.index(2, 10);
        std::vector<double> widths(n);
        std::vector<double> l0(n);
        double area = 0;
        for (std::size_t k = 0; k < n; ++k) {
            widths[k] = gen.uniform(0.1, 3);
            l0[k] = gen.uniform(0, 5);
            area += widths[k] * l0[k];
        }
        const auto share = gen.simplex(n);
        std::vector<TransferContainer> c;
        for (std::size_t k = 0; k < n; ++k) c.push_back({widths[k], l0[k], share[k] * area / widths[k]});
        const auto spec = TransferSpec::create(c);
        for (int i = 0; i <= 100; ++i) {
            const auto lv = transfer_at(spec, ease(i / 100.0));
            double sum = 0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += widths[k] * lv[k];
                EXPECT_GE(lv[k], std::min(c[k].level0, c[k].level1) - 1e-12);
                EXPECT_LE(lv[k], std::max(c[k].level0, c[k].level1) + 1e-12);
            }
            ASSERT_NEAR(sum, area, 1e-9 * area);
        }
    }
}

// ─── communicating segments ──────────────────────────────────────────────────

TEST(SegmentsShiftAt, Examples) {
    const SegmentStack s{1.0, {{"A", 2}, {"B", 1}, {"C", 3}}};
    const auto mid = segments_shift_at(s, "C", EasedTime(0.5));
    EXPECT_EQ(mid.segments, (std::vector<Segment>{{"C", 1.5}, {"A", 2}, {"B", 1}, {"C", 1.5}}));
    EXPECT_DOUBLE_EQ(mid.total_height(), 6.0);
    EXPECT_EQ(segments_shift_at(s, "C", EasedTime(1.0)).segments,
              (std::vector<Segment>{{"C", 3}, {"A", 2}, {"B", 1}}));
    EXPECT_EQ(segments_shift_at(s, "C", EasedTime(0.0)).segments, s.segments);
    for (double u : {0.0, 0.4, 1.0}) {
        EXPECT_EQ(segments_shift_at(s, "A", EasedTime(u)).segments, s.segments);
    }
    EXPECT_EQ(code_of([&] { segments_shift_at(s, "D", EasedTime(0.5)); }), ErrorCode::UnknownLiquid);
}

TEST(SegmentsShiftAt, RandomStacksConserveAndDoNotOverlap) {
    oracle::Gen gen(35);
    const std::vector<std::string> names{"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 300; ++trial) {
        SegmentStack s;
        s.width = gen.uniform(0.2, 2);
        const std::size_t n = gen.index(1, 8);
        for (std::size_t i = 0; i < n; ++i) s.segments.push_back({names[gen.index(0, 4)], gen.uniform(0, 3)});
        const std::string sel = s.segments[gen.index(0, n - 1)].liquid;
        for (int i = 0; i <= 20; ++i) {
            const auto out = segments_shift_at(s, sel, ease(i / 20.0));
            for (const auto& name : names) {
                EXPECT_NEAR(out.liquid_height(name), s.liquid_height(name), 1e-12);
            }
            const auto rects = stack_rects(out, 0.0, 0.0);
            for (std::size_t a = 0; a < rects.size(); ++a) {
                for (std::size_t b = a + 1; b < rects.size(); ++b) {
                    if (out.segments[a].liquid != out.segments[b].liquid) {
                        EXPECT_LE(oracle::intersection(rects[a], rects[b]), 1e-12);
                    }
                }
            }
        }
    }
}

TEST(StackRects, StacksBottomUp) {
    const SegmentStack s{0.5, {{"A", 2}, {"B", 1}}};
    const auto r = stack_rects(s, 3.0, 1.0);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0], (Rect{3, 3.5, 1, 3}));
    EXPECT_EQ(r[1], (Rect{3, 3.5, 3, 4}));
}
