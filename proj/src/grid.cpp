#include "extremal/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "extremal/io.hpp"

namespace extremal {

void GridSpec::check() const {
    if (dim == 0) throw std::invalid_argument("grid: dimension must be positive");
    if (u_coord >= 2 * dim || v_coord >= 2 * dim || u_coord == v_coord) {
        throw std::invalid_argument("grid: plane must name two distinct coordinates");
    }
    if (fixed.size() != 2 * dim - 2) {
        throw std::invalid_argument("grid: expected " + std::to_string(2 * dim - 2) + " fixed values");
    }
    if (!(u_min < u_max) || !(v_min < v_max)) throw std::invalid_argument("grid: bounds need min < max");
    if (resolution < 2) throw std::invalid_argument("grid: resolution must be at least 2");
}

double GridSpec::u_at(std::size_t iu) const {
    if (iu + 1 == resolution) return u_max;
    return u_min + (u_max - u_min) * static_cast<double>(iu) / static_cast<double>(resolution - 1);
}

double GridSpec::v_at(std::size_t iv) const {
    if (iv + 1 == resolution) return v_max;
    return v_min + (v_max - v_min) * static_cast<double>(iv) / static_cast<double>(resolution - 1);
}

ComplexVector GridSpec::point(std::size_t iu, std::size_t iv) const {
    Vector real(2 * dim);
    std::size_t f = 0;
    for (std::size_t c = 0; c < 2 * dim; ++c) {
        if (c == u_coord) real[c] = u_at(iu);
        else if (c == v_coord) real[c] = v_at(iv);
        else real[c] = fixed[f++];
    }
    ComplexVector z(dim);
    for (std::size_t i = 0; i < dim; ++i) z[i] = {real[2 * i], real[2 * i + 1]};
    return z;
}

std::size_t parse_coordinate_name(std::string_view name, std::size_t dim) {
    if (name.size() < 3) throw std::invalid_argument("bad coordinate name '" + std::string(name) + "'");
    const std::string_view kind = name.substr(0, 2);
    std::size_t k = 0;
    const auto digits = name.substr(2);
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size() || k < 1 || k > dim ||
        (kind != "re" && kind != "im")) {
        throw std::invalid_argument("bad coordinate name '" + std::string(name) + "'");
    }
    return 2 * (k - 1) + (kind == "im" ? 1 : 0);
}

std::string coordinate_name(std::size_t index) {
    return (index % 2 == 0 ? "re" : "im") + std::to_string(index / 2 + 1);
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_real(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw std::invalid_argument("bad number '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

void parse_plane(std::string_view text, GridSpec& grid) {
    const std::size_t colon = text.find(':');
    const auto axes = split(text.substr(0, colon), ',');
    if (axes.size() != 2) throw std::invalid_argument("plane needs two coordinates, e.g. re1,re2");
    grid.u_coord = parse_coordinate_name(axes[0], grid.dim);
    grid.v_coord = parse_coordinate_name(axes[1], grid.dim);
    if (grid.u_coord == grid.v_coord) throw std::invalid_argument("plane coordinates must differ");
    grid.fixed.assign(2 * grid.dim - 2, 0.0);
    if (colon != std::string_view::npos) {
        const auto vals = split(text.substr(colon + 1), ',');
        if (vals.size() != grid.fixed.size()) {
            throw std::invalid_argument("plane needs " + std::to_string(grid.fixed.size()) + " fixed values");
        }
        for (std::size_t i = 0; i < vals.size(); ++i) grid.fixed[i] = parse_real(vals[i]);
    }
}

std::vector<GridSample> evaluate_grid(const Evaluator& ev, const GridSpec& grid, std::size_t jobs) {
    grid.check();
    if (grid.dim != ev.dim()) throw DimensionMismatch("grid dimension differs from polytope dimension");
    const std::size_t n = grid.resolution;
    const std::size_t total = n * n;
    std::vector<GridSample> out(total);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::size_t iu = idx % n;
            const std::size_t iv = idx / n;
            const EvalResult r = ev.evaluate(grid.point(iu, iv));
            out[idx] = {grid.u_at(iu), grid.v_at(iv), r.value, r.argmax};
        }
    };

    jobs = std::clamp<std::size_t>(jobs, 1, total);
    if (jobs == 1) {
        work(0, total);
        return out;
    }
    std::vector<std::thread> threads;
    const std::size_t chunk = (total + jobs - 1) / jobs;
    for (std::size_t t = 0; t < jobs; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(total, b + chunk);
        if (b >= e) break;
        threads.emplace_back(work, b, e);
    }
    for (auto& th : threads) th.join();
    return out;
}

void write_grid_csv(std::ostream& os, const std::vector<GridSample>& samples,
                    const std::string& header_comment) {
    if (!header_comment.empty()) os << "# " << header_comment << '\n';
    os << "u,v,value,argmax\n";
    for (const auto& s : samples) {
        os << format_double(s.u) << ',' << format_double(s.v) << ',' << format_double(s.value) << ','
           << s.argmax << '\n';
    }
}

void write_grid_json(std::ostream& os, const GridSpec& grid, const std::vector<GridSample>& samples,
                     const std::string& generated) {
    nlohmann::json doc;
    if (!generated.empty()) doc["generated"] = generated;
    doc["dim"] = grid.dim;
    doc["plane"] = {coordinate_name(grid.u_coord), coordinate_name(grid.v_coord)};
    doc["fixed"] = grid.fixed;
    doc["bounds"] = {grid.u_min, grid.u_max, grid.v_min, grid.v_max};
    doc["resolution"] = grid.resolution;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : samples) rows.push_back({s.u, s.v, s.value, s.argmax});
    doc["rows"] = std::move(rows);
    os << doc.dump() << '\n';
}

}  // namespace extremal
