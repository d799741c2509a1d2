#pragma once

#include <cstdint>
#include <string>

#include "hypvoro/graph.hpp"
#include "hypvoro/sample.hpp"
#include "hypvoro/schemes.hpp"
#include "hypvoro/tessellation.hpp"
#include "hypvoro/verify.hpp"
#include "hypvoro/walk.hpp"

namespace hypvoro {

// JSON codecs.  Writers emit two-space-indented documents with a trailing
// newline and round-trip float precision; readers validate shape and values
// and throw ValidationError naming the offending field.
std::string sample_to_json(const Sample& s);
Sample sample_from_json(const std::string& text);

std::string graph_to_json(const DualGraph& g);
DualGraph graph_from_json(const std::string& text);

std::string expansion_to_json(const ExpansionReport& r);

std::string scheme_to_json(const Scheme& s);
Scheme scheme_from_json(const std::string& text);

std::string trace_to_json(const WalkTrace& t, std::uint64_t seed);
std::string speed_to_json(const SpeedEstimate& e, std::uint64_t k_eval);
std::string verification_to_json(const VerificationReport& r);

// CSV with an "angle_bin_center,mass" header, one row per bin.
std::string histogram_to_csv(const AngleHistogram& h);

// Writes via a sibling temp file renamed into place.
void write_text_atomic(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

struct RenderOptions {
  std::size_t max_render_edges = 200000;
};

// Square viewport around the unit disk: Delaunay edges as blue geodesic
// arcs, deduplicated Voronoi cell sides as red geodesic arcs, window circle
// in black.  Exceeding max_render_edges subsamples each family at a fixed
// stride.
std::string render_svg(const DelaunayComplex& c, const VoronoiCells& cells,
                       const RenderOptions& opt = {});

}  // namespace hypvoro
