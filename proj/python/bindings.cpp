#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>

#include "vosedge/collection.hpp"
#include "vosedge/error.hpp"
#include "vosedge/imageio.hpp"
#include "vosedge/metrics.hpp"
#include "vosedge/pipeline.hpp"
#include "vosedge/vos.hpp"

namespace py = pybind11;
using namespace vosedge;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

RgbImage to_image(const DoubleArray& arr) {
    if (arr.ndim() != 3 || arr.shape(2) != 3) {
        throw py::value_error("image must have shape (height, width, 3)");
    }
    RgbImage img(static_cast<std::size_t>(arr.shape(1)), static_cast<std::size_t>(arr.shape(0)));
    const double* src = arr.data();
    auto px = img.data();
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = {src[3 * i], src[3 * i + 1], src[3 * i + 2]};
    validate_image(img);
    return img;
}

py::array_t<double> from_image(const RgbImage& img) {
    py::array_t<double> out({img.height(), img.width(), std::size_t{3}});
    double* dst = out.mutable_data();
    const auto px = img.data();
    for (std::size_t i = 0; i < px.size(); ++i) {
        dst[3 * i] = px[i].r;
        dst[3 * i + 1] = px[i].g;
        dst[3 * i + 2] = px[i].b;
    }
    return out;
}

EdgeMap to_edges(const ByteArray& arr) {
    if (arr.ndim() != 2) throw py::value_error("edge map must be 2-D");
    EdgeMap em(static_cast<std::size_t>(arr.shape(1)), static_cast<std::size_t>(arr.shape(0)), 0);
    const std::uint8_t* src = arr.data();
    auto dst = em.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i] ? 1 : 0;
    return em;
}

py::array_t<bool> from_edges(const EdgeMap& em) {
    py::array_t<bool> out({em.height(), em.width()});
    bool* dst = out.mutable_data();
    const auto src = em.data();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] != 0;
    return out;
}

WindowSample to_window(const DoubleArray& arr) {
    if (arr.size() != 27) throw py::value_error("window must hold 9 RGB pixels, shape (9, 3) or (3, 3, 3)");
    WindowSample w;
    const double* src = arr.data();
    for (std::size_t i = 0; i < kWindowSize; ++i) w[i] = {src[3 * i], src[3 * i + 1], src[3 * i + 2]};
    return w;
}

ColorPixel to_pixel(const std::array<double, 3>& c) { return {c[0], c[1], c[2]}; }

Operator parse_operator(const std::string& name) {
    if (name == "vr") return Operator::VR;
    if (name == "mvr") return Operator::MVR;
    if (name == "vd") return Operator::VD;
    if (name == "mvd") return Operator::MVD;
    throw py::value_error("operator must be one of vr, mvr, vd, mvd");
}

BorderPolicy parse_border(const std::string& name) {
    if (name == "replicate") return BorderPolicy::Replicate;
    if (name == "reflect") return BorderPolicy::Reflect;
    if (name == "zero") return BorderPolicy::Zero;
    throw py::value_error("border must be one of replicate, reflect, zero");
}

PipelineConfig make_config(const std::string& op, int k, std::optional<double> threshold,
                           std::optional<double> percentile, bool nms, const std::string& border) {
    if (threshold && percentile) throw py::value_error("give at most one of threshold and percentile");
    PipelineConfig cfg;
    cfg.op = parse_operator(op);
    cfg.k = k;
    cfg.nms = nms;
    cfg.border = parse_border(border);
    if (threshold) cfg.threshold = FixedThreshold{*threshold};
    if (percentile) cfg.threshold = PercentileThreshold{*percentile};
    cfg.validate();
    return cfg;
}

CollectionScheme find_scheme(const std::string& id) {
    for (const auto& s : build_default_schemes()) {
        if (to_string(s.id()) == id) return s;
    }
    throw py::value_error("unknown scheme id '" + id + "'");
}

std::vector<int> side_list(const NeighborSet& set) {
    std::vector<int> out;
    for (std::size_t i = 0; i < kWindowSize; ++i) {
        if (set.test(i)) out.push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_vosedge, m) {
    m.doc() = "Colour edge detection with vector order statistics and pixel-collection masks.";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<ImageIoError>(m, "ImageIoError", PyExc_OSError);

    m.attr("MAX_DISTANCE") = kMaxDistance;
    m.attr("SCHEME_IDS") = py::make_tuple("E", "NE", "N", "NW", "CE", "CNE", "CN", "CNW");

    m.def("distance", [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return distance(to_pixel(a), to_pixel(b));
    }, py::arg("a"), py::arg("b"), "Euclidean RGB distance between two pixels.");

    m.def("reduced_order", [](const DoubleArray& window) {
        const auto ow = reduced_order(to_window(window));
        return py::make_tuple(std::vector<int>(ow.order.begin(), ow.order.end()),
                              std::vector<double>(ow.aggregates.begin(), ow.aggregates.end()));
    }, py::arg("window"), "Window indices by ascending aggregate distance, and those aggregates.");

    m.def("vos_operator", [](const DoubleArray& window, const std::string& op, int k) {
        const auto w = to_window(window);
        validate_order(k);
        return apply_operator(parse_operator(op), reduced_order(w), w, k);
    }, py::arg("window"), py::arg("operator") = "mvr", py::arg("k") = 3,
       "vr, mvr, vd or mvd on a 3x3 window given row-major as (9, 3).");

    m.def("default_schemes", [] {
        py::list out;
        for (const auto& s : build_default_schemes()) {
            out.append(py::make_tuple(std::string(to_string(s.id())), side_list(s.side_a()), side_list(s.side_b())));
        }
        return out;
    }, "The eight default collection schemes as (id, side_a, side_b).");

    m.def("scheme_mask", [](const std::string& id) {
        const Mask mask = scheme_to_mask(find_scheme(id));
        py::array_t<double> out({3, 3});
        std::copy(mask.coefficients.begin(), mask.coefficients.end(), out.mutable_data());
        return out;
    }, py::arg("id"));

    m.def("directional_response", [](const DoubleArray& window, const std::string& id) {
        return directional_response(to_window(window), find_scheme(id));
    }, py::arg("window"), py::arg("id"));

    m.def("best_direction", [](const DoubleArray& window) {
        const auto schemes = build_default_schemes();
        const auto best = best_direction(to_window(window), schemes);
        return py::make_tuple(std::string(to_string(best.id)), best.response);
    }, py::arg("window"));

    m.def("response_map", [](const DoubleArray& image, const std::string& op, int k, bool nms,
                             const std::string& border) {
        const auto cfg = make_config(op, k, std::nullopt, std::nullopt, nms, border);
        const auto schemes = build_default_schemes();
        ResponseMap rm = compute_response_map(to_image(image), cfg, schemes);
        if (nms) rm = non_max_suppression(rm);
        py::array_t<double> resp({rm.height(), rm.width()});
        py::array_t<std::uint8_t> dir({rm.height(), rm.width()});
        std::copy(rm.response.data().begin(), rm.response.data().end(), resp.mutable_data());
        std::transform(rm.direction.data().begin(), rm.direction.data().end(), dir.mutable_data(),
                       [](SchemeId id) { return static_cast<std::uint8_t>(id); });
        return py::make_tuple(resp, dir);
    }, py::arg("image"), py::arg("operator") = "mvr", py::arg("k") = 3, py::arg("nms") = false,
       py::arg("border") = "replicate",
       "Per-pixel operator response and direction code (index into SCHEME_IDS).");

    m.def("detect_edges", [](const DoubleArray& image, const std::string& op, int k, std::optional<double> threshold,
                             std::optional<double> percentile, bool nms, const std::string& border) {
        const auto cfg = make_config(op, k, threshold, percentile, nms, border);
        const auto schemes = build_default_schemes();
        const Detection det = run_detector(to_image(image), cfg, schemes);
        return py::make_tuple(from_edges(det.edges), det.threshold);
    }, py::arg("image"), py::arg("operator") = "mvr", py::arg("k") = 3, py::arg("threshold") = py::none(),
       py::arg("percentile") = py::none(), py::arg("nms") = true, py::arg("border") = "replicate",
       "Returns (edge map, threshold used). Otsu unless threshold or percentile is given.");

    m.def("step_image", [](std::size_t width, std::size_t height, const std::array<double, 3>& color_a,
                           const std::array<double, 3>& color_b, const std::string& orientation) {
        StepOrientation o;
        if (orientation == "vertical") o = StepOrientation::Vertical;
        else if (orientation == "horizontal") o = StepOrientation::Horizontal;
        else if (orientation == "diagonal") o = StepOrientation::Diagonal;
        else throw py::value_error("orientation must be vertical, horizontal or diagonal");
        auto [img, truth] = generate_step_image(width, height, to_pixel(color_a), to_pixel(color_b), o);
        return py::make_tuple(from_image(img), from_edges(truth.map));
    }, py::arg("width") = 64, py::arg("height") = 64, py::arg("color_a") = std::array<double, 3>{255, 0, 0},
       py::arg("color_b") = std::array<double, 3>{0, 0, 255}, py::arg("orientation") = "vertical");

    m.def("disk_image", [](std::size_t size, std::size_t radius, const std::array<double, 3>& color_a,
                           const std::array<double, 3>& color_b) {
        auto [img, truth] = generate_disk_image(size, radius, to_pixel(color_a), to_pixel(color_b));
        return py::make_tuple(from_image(img), from_edges(truth.map));
    }, py::arg("size") = 64, py::arg("radius") = 20, py::arg("color_a") = std::array<double, 3>{255, 0, 0},
       py::arg("color_b") = std::array<double, 3>{0, 0, 255});

    m.def("salt_and_pepper", [](const DoubleArray& image, double rate, std::uint64_t seed) {
        RgbImage img = to_image(image);
        add_salt_and_pepper(img, rate, seed);
        return from_image(img);
    }, py::arg("image"), py::arg("rate"), py::arg("seed"));

    m.def("endpoint_count", [](const ByteArray& edges) { return endpoint_count(to_edges(edges)); },
          py::arg("edges"));
    m.def("connected_components", [](const ByteArray& edges) { return connected_components(to_edges(edges)); },
          py::arg("edges"));
    m.def("pratt_fom", [](const ByteArray& detected, const ByteArray& truth, double alpha) {
        return pratt_fom(to_edges(detected), GroundTruth{to_edges(truth), "python"}, alpha);
    }, py::arg("detected"), py::arg("truth"), py::arg("alpha") = kPrattAlpha);

    m.def("load_image", [](const std::string& path) { return from_image(load_image(path)); }, py::arg("path"));
    m.def("save_image", [](const DoubleArray& image, const std::string& path) { save_image(to_image(image), path); },
          py::arg("image"), py::arg("path"));
    m.def("save_edge_map", [](const ByteArray& edges, const std::string& path) {
        save_edge_map(to_edges(edges), path);
    }, py::arg("edges"), py::arg("path"));

    m.attr("__version__") = "0.1.0";
}
