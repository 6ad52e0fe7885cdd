#include "csaf/environment/path.hpp"

#include "csaf/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace csaf::environment {

namespace {

constexpr double kAlpha = 0.5; // centripetal

struct SegmentPoints {
    Vec3 p0, p1, p2, p3;
};

SegmentPoints segment_points(const PathSpec& spec, std::size_t i) {
    const auto& pts = spec.control_points;
    const std::size_t n = pts.size();
    if (spec.closed) return {pts[(i + n - 1) % n], pts[i % n], pts[(i + 1) % n], pts[(i + 2) % n]};
    const Vec3& p1 = pts[i];
    const Vec3& p2 = pts[i + 1];
    const Vec3 p0 = i > 0 ? pts[i - 1] : Vec3(2.0 * p1 - p2);
    const Vec3 p3 = i + 2 < n ? pts[i + 2] : Vec3(2.0 * p2 - p1);
    return {p0, p1, p2, p3};
}

} // namespace

std::size_t PathTable::segment_count() const {
    const std::size_t n = spec.control_points.size();
    return spec.closed ? n : n - 1;
}

void validate(const PathSpec& spec) {
    const auto& pts = spec.control_points;
    require(pts.size() >= 2, ErrorCode::InvalidArgument, "a path needs at least two control points");
    require(spec.sample_count >= 2, ErrorCode::InvalidArgument, "sample_count must be >= 2");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        require(pts[i].allFinite(), ErrorCode::InvalidArgument, "non-finite control point");
        if (i > 0) {
            require((pts[i] - pts[i - 1]).norm() > 0.0, ErrorCode::InvalidArgument,
                    "consecutive duplicate control points at index " + std::to_string(i));
        }
    }
    if (spec.closed) {
        require((pts.front() - pts.back()).norm() > 0.0, ErrorCode::InvalidArgument,
                "closed path repeats its first point at the end");
    }
}

PathPoint curve_at(const PathSpec& spec, double u) {
    const std::size_t segments = spec.closed ? spec.control_points.size() : spec.control_points.size() - 1;
    const double clamped = std::clamp(u, 0.0, static_cast<double>(segments));
    const auto i = std::min(static_cast<std::size_t>(clamped), segments - 1);
    const double t = clamped - static_cast<double>(i);
    const auto [p0, p1, p2, p3] = segment_points(spec, i);

    if (spec.interpolation == PathInterpolation::Linear) return {p1 + t * (p2 - p1), p2 - p1};

    // Hermite form of the centripetal Catmull-Rom segment between p1 and p2.
    const double t01 = std::pow((p1 - p0).norm(), kAlpha);
    const double t12 = std::pow((p2 - p1).norm(), kAlpha);
    const double t23 = std::pow((p3 - p2).norm(), kAlpha);
    const Vec3 m1 = (p2 - p1) + t12 * ((p1 - p0) / t01 - (p2 - p0) / (t01 + t12));
    const Vec3 m2 = (p2 - p1) + t12 * ((p3 - p2) / t23 - (p3 - p1) / (t12 + t23));
    const Vec3 a = 2.0 * (p1 - p2) + m1 + m2;
    const Vec3 b = 3.0 * (p2 - p1) - 2.0 * m1 - m2;
    return {((a * t + b) * t + m1) * t + p1, (3.0 * a * t + 2.0 * b) * t + m1};
}

PathTable build_path(const PathSpec& spec) {
    validate(spec);
    PathTable table;
    table.spec = spec;
    const std::size_t segments = table.segment_count();
    // Every segment boundary is a sample, so polyline corners are never cut.
    const std::size_t per_segment =
        std::max<std::size_t>(1, (static_cast<std::size_t>(spec.sample_count) - 1 + segments - 1) / segments);
    const std::size_t count = segments * per_segment + 1;
    table.samples.reserve(count);
    double s = 0.0;
    Vec3 previous = curve_at(spec, 0.0).position;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t seg = std::min(k / per_segment, segments - 1);
        const std::size_t j = k - seg * per_segment;
        const double u = static_cast<double>(seg) + static_cast<double>(j) / static_cast<double>(per_segment);
        const Vec3 p = curve_at(spec, u).position;
        s += (p - previous).norm();
        previous = p;
        table.samples.push_back({s, u, p});
    }
    table.total_length = s;
    require(table.total_length > 0.0, ErrorCode::InvalidArgument, "path has zero length");
    return table;
}

PathPoint pose_at(const PathTable& table, double s) {
    require(std::isfinite(s), ErrorCode::InvalidArgument, "arc length must be finite");
    const double length = table.total_length;
    if (table.spec.closed) {
        s = std::fmod(s, length);
        if (s < 0.0) s += length;
    } else {
        const double slack = 1e-9 * std::max(1.0, length);
        require(s >= -slack && s <= length + slack, ErrorCode::OutOfRange,
                "arc length outside [0, " + std::to_string(length) + "] on an open path");
        s = std::clamp(s, 0.0, length);
    }
    const auto& samples = table.samples;
    auto it = std::upper_bound(samples.begin(), samples.end(), s,
                               [](double value, const PathSample& sample) { return value < sample.s; });
    double u = samples.back().u;
    if (it != samples.end()) {
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double span = hi.s - lo.s;
        const double f = span > 0.0 ? (s - lo.s) / span : 0.0;
        u = lo.u + f * (hi.u - lo.u);
    }
    PathPoint point = curve_at(table.spec, u);
    const double norm = point.tangent.norm();
    point.tangent = norm > 0.0 ? Vec3(point.tangent / norm) : Vec3::UnitZ();
    return point;
}

} // namespace csaf::environment
