#pragma once

// Graph files.
//
// Binary: little-endian header
//   "PACG" | version u16 | n u64 | m u16 | delta f64 | delta' f64 | tau u64 | seed u64
// followed by the m(n-2) targets as u64 in (t, i) order.
// Text: one JSON object per line, a header object then {"t","i","target"}
// per record.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pacd/graph.hpp"
#include "pacd/schedule.hpp"

namespace pacd {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GraphFormat { binary, jsonl };

inline constexpr std::uint16_t kGraphFileVersion = 1;
inline constexpr std::array<char, 4> kGraphMagic{'P', 'A', 'C', 'G'};

namespace detail {

template <class T>
void put_le(std::ostream& out, T value) {
  std::uint64_t bits = 0;
  if constexpr (std::is_floating_point_v<T>) {
    bits = std::bit_cast<std::uint64_t>(static_cast<double>(value));
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t k = 0; k < sizeof(T); ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) throw io_error("truncated graph file");
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) bits |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  if constexpr (std::is_floating_point_v<T>) {
    return std::bit_cast<double>(bits);
  } else {
    return static_cast<T>(bits);
  }
}

inline void check_header(std::uint64_t n, std::uint64_t m) {
  if (n < 2 || n > UINT32_MAX || m < 1 || m > UINT16_MAX) throw io_error("graph header out of range");
}

}  // namespace detail

inline void write_graph_binary(std::ostream& out, const EvolvingGraph& g) {
  out.write(kGraphMagic.data(), kGraphMagic.size());
  detail::put_le<std::uint16_t>(out, kGraphFileVersion);
  detail::put_le<std::uint64_t>(out, g.vertex_count());
  detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(g.edges_per_vertex()));
  detail::put_le<double>(out, g.schedule().delta);
  detail::put_le<double>(out, g.schedule().delta_prime);
  detail::put_le<std::uint64_t>(out, g.schedule().tau);
  detail::put_le<std::uint64_t>(out, g.seed());
  for (Vertex w : g.targets()) detail::put_le<std::uint64_t>(out, w);
  if (!out) throw io_error("failed to write graph");
}

inline void write_graph_jsonl(std::ostream& out, const EvolvingGraph& g) {
  const nlohmann::json header = {{"format", "PACG"},
                                 {"version", kGraphFileVersion},
                                 {"n", g.vertex_count()},
                                 {"m", g.edges_per_vertex()},
                                 {"delta", g.schedule().delta},
                                 {"delta_prime", g.schedule().delta_prime},
                                 {"tau", g.schedule().tau},
                                 {"seed", g.seed()}};
  out << header.dump() << '\n';
  for (std::uint64_t k = 0; k < g.record_count(); ++k) {
    const AttachmentRecord r = g.record(k);
    out << "{\"t\":" << r.t << ",\"i\":" << r.i << ",\"target\":" << r.target << "}\n";
  }
  if (!out) throw io_error("failed to write graph");
}

inline EvolvingGraph read_graph_binary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kGraphMagic) throw io_error("not a PACG binary graph");
  if (detail::get_le<std::uint16_t>(in) != kGraphFileVersion) throw io_error("unsupported graph file version");
  const auto n = detail::get_le<std::uint64_t>(in);
  const auto m = detail::get_le<std::uint16_t>(in);
  DeltaSchedule schedule;
  schedule.delta = detail::get_le<double>(in);
  schedule.delta_prime = detail::get_le<double>(in);
  schedule.tau = detail::get_le<std::uint64_t>(in);
  const auto seed = detail::get_le<std::uint64_t>(in);
  detail::check_header(n, m);
  std::vector<Vertex> targets(static_cast<std::size_t>(m) * (n - 2));
  for (auto& w : targets) {
    const auto value = detail::get_le<std::uint64_t>(in);
    if (value > UINT32_MAX) throw io_error("target index out of range");
    w = static_cast<Vertex>(value);
  }
  try {
    return EvolvingGraph(static_cast<std::uint32_t>(n), m, std::move(targets), schedule, seed);
  } catch (const invalid_config& e) {
    throw io_error(std::string("inconsistent graph file: ") + e.what());
  }
}

inline EvolvingGraph read_graph_jsonl(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw io_error("empty graph file");
  try {
    const auto header = nlohmann::json::parse(line);
    const auto n = header.at("n").get<std::uint64_t>();
    const auto m = header.at("m").get<std::uint64_t>();
    detail::check_header(n, m);
    DeltaSchedule schedule{header.at("delta").get<double>(), header.at("delta_prime").get<double>(),
                           header.at("tau").get<std::uint64_t>()};
    std::vector<Vertex> targets;
    targets.reserve(static_cast<std::size_t>(m) * (n - 2));
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto rec = nlohmann::json::parse(line);
      const auto t = rec.at("t").get<std::uint64_t>();
      const auto i = rec.at("i").get<std::uint64_t>();
      if (t < 3 || i < 1 || i > m || step_index(static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(i),
                                                 static_cast<std::uint32_t>(m)) != targets.size()) {
        throw io_error("records must be listed in (t, i) order");
      }
      targets.push_back(rec.at("target").get<Vertex>());
    }
    return EvolvingGraph(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m), std::move(targets),
                         schedule, header.at("seed").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("malformed JSONL graph: ") + e.what());
  } catch (const invalid_config& e) {
    throw io_error(std::string("inconsistent graph file: ") + e.what());
  }
}

inline void write_graph(const std::string& path, const EvolvingGraph& g, GraphFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  if (format == GraphFormat::binary) {
    write_graph_binary(out, g);
  } else {
    write_graph_jsonl(out, g);
  }
}

/// Reads either encoding, telling them apart by the magic bytes.
inline EvolvingGraph read_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  const bool binary = in.gcount() == 4 && magic == kGraphMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_graph_binary(in) : read_graph_jsonl(in);
}

}  // namespace pacd
