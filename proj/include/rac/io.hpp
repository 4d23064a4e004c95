#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "rac/core.hpp"
#include "rac/eval.hpp"
#include "rac/mst.hpp"
#include "rac/strategy.hpp"

namespace rac::io {

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  // drop trailing all-blank lines
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

inline std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

inline bool try_parse_double(std::string_view cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !cell.empty();
}

inline double parse_double(std::string_view cell, std::size_t line_no) {
  double v = 0.0;
  if (!try_parse_double(cell, v))
    throw ParseError("expected a number, got '" + std::string(cell) + "'", line_no);
  return v;
}

inline long parse_int(std::string_view cell, std::size_t line_no) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty())
    throw ParseError("expected an integer, got '" + std::string(cell) + "'", line_no);
  return v;
}

// Numeric grid with an optional header row (detected by any non-numeric
// cell in the first row). Line numbers in errors are 1-based physical lines.
inline Matrix parse_numeric_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw ParseError("empty file: " + path, 1);

  std::size_t first_row = 0;
  {
    double dummy = 0.0;
    for (const auto cell : split_cells(lines[0]))
      if (!try_parse_double(cell, dummy)) {
        first_row = 1;
        break;
      }
  }
  if (first_row >= lines.size())
    throw ParseError("no data rows in " + path, lines.size());

  const std::size_t cols = split_cells(lines[first_row]).size();
  Matrix m(lines.size() - first_row, cols, 0.0);
  for (std::size_t r = first_row; r < lines.size(); ++r) {
    const auto cells = split_cells(lines[r]);
    if (cells.size() != cols)
      throw ParseError("expected " + std::to_string(cols) + " columns, got " +
                           std::to_string(cells.size()),
                       r + 1);
    for (std::size_t c = 0; c < cols; ++c)
      m(r - first_row, c) = parse_double(cells[c], r + 1);
  }
  return m;
}

}  // namespace detail

inline Dataset load_points_csv(const std::string& path) {
  return Dataset::points(detail::parse_numeric_csv(path));
}

inline Dataset load_dissimilarity_csv(const std::string& path) {
  return Dataset::dissimilarity(detail::parse_numeric_csv(path));
}

// One label per line, any string; densified to [0, k) by first appearance.
inline FlatPartition load_labels_csv(const std::string& path) {
  const auto lines = detail::read_lines(path);
  if (lines.empty()) throw ParseError("empty file: " + path, 1);
  FlatPartition p;
  std::vector<std::string> seen;
  for (const auto& raw : lines) {
    const std::string label(detail::trim(raw));
    int dense = -1;
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i] == label) {
        dense = static_cast<int>(i);
        break;
      }
    if (dense < 0) {
      dense = static_cast<int>(seen.size());
      seen.push_back(label);
    }
    p.labels.push_back(dense);
  }
  p.k = static_cast<int>(seen.size());
  return p;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

inline constexpr const char* kLinkageHeader = "rep_a,rep_b,distance,level,order";

// 12 significant digits; output files are expected to be byte-stable.
inline std::string format_distance(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

inline double round_trip_12(double v) { return std::stod(format_distance(v)); }

}  // namespace detail

// Linkage rows carry the witness pair (the closest cross pair under Single,
// the cluster reps otherwise), one row per record in `order` order.
inline void write_linkage_csv(const std::string& path, const Dendrogram& d) {
  auto out = detail::open_out(path);
  out << kLinkageHeader << "\n";
  for (const LinkageRecord& r : d.records)
    out << r.witness_a << ',' << r.witness_b << ',' << format_distance(r.distance) << ','
        << r.level << ',' << r.order << "\n";
  if (!out) throw IoError("failed writing " + path);
}

// Reads back what write_linkage_csv produced. The witness columns double as
// reps; that is enough to re-cut the dendrogram at any k.
inline std::vector<LinkageRecord> read_linkage_csv(const std::string& path) {
  const auto lines = detail::read_lines(path);
  if (lines.empty() || detail::trim(lines[0]) != kLinkageHeader)
    throw ParseError("missing linkage header in " + path, 1);
  std::vector<LinkageRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = detail::split_cells(lines[r]);
    if (cells.size() != 5) throw ParseError("expected 5 columns", r + 1);
    LinkageRecord rec;
    rec.rep_a = static_cast<int>(detail::parse_int(cells[0], r + 1));
    rec.rep_b = static_cast<int>(detail::parse_int(cells[1], r + 1));
    rec.witness_a = rec.rep_a;
    rec.witness_b = rec.rep_b;
    rec.distance = detail::parse_double(cells[2], r + 1);
    rec.level = static_cast<int>(detail::parse_int(cells[3], r + 1));
    rec.order = static_cast<int>(detail::parse_int(cells[4], r + 1));
    records.push_back(rec);
  }
  return records;
}

inline void write_events_json(const std::string& path, const Dendrogram& d) {
  nlohmann::ordered_json events = nlohmann::ordered_json::array();
  for (const MergeEvent& ev : d.events) {
    nlohmann::ordered_json linkages = nlohmann::ordered_json::array();
    for (const LinkageRecord& r : ev.linkages)
      linkages.push_back({{"rep_a", r.witness_a},
                          {"rep_b", r.witness_b},
                          {"distance", detail::round_trip_12(r.distance)},
                          {"level", r.level},
                          {"order", r.order}});
    events.push_back({{"level", ev.level},
                      {"input_cluster_ids", ev.input_cluster_ids},
                      {"output_cluster_id", ev.output_cluster_id},
                      {"linkages", std::move(linkages)}});
  }
  auto out = detail::open_out(path);
  out << events.dump(2) << "\n";
  if (!out) throw IoError("failed writing " + path);
}

// Dendrogram as a graphviz graph: objects are leaves, each merge event is a
// node labeled "L<level>:<distance>" (distance = the event's largest
// linkage) joined to the clusters it consumed.
inline void write_dot(const std::string& path, const Dendrogram& d) {
  auto out = detail::open_out(path);
  out << "graph dendrogram {\n  node [shape=box];\n";
  for (int i = 0; i < d.n; ++i)
    out << "  o" << i << " [label=\"" << i << "\"];\n";

  struct Entry {
    int smallest;
    std::string name;
  };
  std::vector<Entry> current;
  current.reserve(d.n);
  for (int i = 0; i < d.n; ++i) current.push_back({i, "o" + std::to_string(i)});

  std::size_t next_event = 0;
  for (int level = 1; level <= d.levels; ++level) {
    std::vector<bool> consumed(current.size(), false);
    std::vector<Entry> merged;
    while (next_event < d.events.size() && d.events[next_event].level == level) {
      const MergeEvent& ev = d.events[next_event];
      const std::string name =
          "m" + std::to_string(ev.level) + "_" + std::to_string(ev.output_cluster_id);
      double height = 0.0;
      for (const LinkageRecord& r : ev.linkages) height = std::max(height, r.distance);
      out << "  " << name << " [label=\"L" << ev.level << ":" << format_distance(height)
          << "\"];\n";
      int smallest = current[ev.input_cluster_ids.front()].smallest;
      for (int id : ev.input_cluster_ids) {
        out << "  " << name << " -- " << current[id].name << ";\n";
        consumed[id] = true;
        smallest = std::min(smallest, current[id].smallest);
      }
      merged.push_back({smallest, name});
      ++next_event;
    }
    std::vector<Entry> next;
    next.reserve(current.size());
    for (std::size_t id = 0; id < current.size(); ++id)
      if (!consumed[id]) next.push_back(std::move(current[id]));
    next.insert(next.end(), std::make_move_iterator(merged.begin()),
                std::make_move_iterator(merged.end()));
    std::sort(next.begin(), next.end(),
              [](const Entry& a, const Entry& b) { return a.smallest < b.smallest; });
    current = std::move(next);
  }
  out << "}\n";
  if (!out) throw IoError("failed writing " + path);
}

struct MetricsReport {
  double nmi = 0.0;
  double ari = 0.0;
  double v_measure = 0.0;
  int k = 0;
  LinkageCriterion criterion = LinkageCriterion::Single;
  Strategy strategy = Strategy::Reliable;
};

inline void write_metrics_json(const std::string& path, const MetricsReport& m) {
  const nlohmann::ordered_json j = {{"nmi", m.nmi},
                                    {"ari", m.ari},
                                    {"v_measure", m.v_measure},
                                    {"k", m.k},
                                    {"criterion", to_string(m.criterion)},
                                    {"strategy", to_string(m.strategy)}};
  auto out = detail::open_out(path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("failed writing " + path);
}

inline void write_mst_csv(const std::string& path, const SpanningTree& tree) {
  auto out = detail::open_out(path);
  out << "i,j,weight\n";
  for (const TreeEdge& e : tree.edges)
    out << e.i << ',' << e.j << ',' << format_distance(e.weight) << "\n";
  out << "total,," << format_distance(tree.total_weight) << "\n";
  if (!out) throw IoError("failed writing " + path);
}

inline void write_outliers_csv(const std::string& path, const Dendrogram& d) {
  const auto scores = outlier_scores(d);
  auto out = detail::open_out(path);
  out << "object,join_level,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i)
    out << i << ',' << d.join_level[i] << ',' << format_distance(scores[i]) << "\n";
  if (!out) throw IoError("failed writing " + path);
}

// ---------------------------------------------------------------------------
// Run configuration and pipeline
// ---------------------------------------------------------------------------

enum class Output { LinkageCsv, EventsJson, Dot, MetricsJson, MstCsv, OutlierCsv };

struct RunConfig {
  enum class InputKind { PointsCsv, DissimCsv };

  std::string input_path;
  InputKind input_kind = InputKind::PointsCsv;
  Metric metric = Metric::SquaredEuclidean;
  LinkageCriterion criterion = LinkageCriterion::Single;
  Strategy strategy = Strategy::Reliable;
  std::optional<double> alpha;
  std::optional<int> k;
  std::string labels_path;
  std::set<Output> outputs{Output::LinkageCsv};
  std::string out_dir = ".";
  std::optional<unsigned> seed;  // reserved for synthetic-data generation
};

inline Metric parse_metric(const std::string& s) {
  if (s == "sqeuclidean") return Metric::SquaredEuclidean;
  if (s == "euclidean") return Metric::Euclidean;
  throw InvalidInput("unknown metric: " + s);
}

inline LinkageCriterion parse_criterion(const std::string& s) {
  if (s == "single") return LinkageCriterion::Single;
  if (s == "complete") return LinkageCriterion::Complete;
  if (s == "average") return LinkageCriterion::Average;
  if (s == "centroid") return LinkageCriterion::Centroid;
  if (s == "ward") return LinkageCriterion::Ward;
  throw InvalidInput("unknown criterion: " + s);
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "standard") return Strategy::Standard;
  if (s == "reliable") return Strategy::Reliable;
  if (s == "alpha") return Strategy::Alpha;
  throw InvalidInput("unknown strategy: " + s);
}

inline Output parse_output(const std::string& s) {
  if (s == "linkage") return Output::LinkageCsv;
  if (s == "events") return Output::EventsJson;
  if (s == "dot") return Output::Dot;
  if (s == "metrics") return Output::MetricsJson;
  if (s == "mst") return Output::MstCsv;
  if (s == "outliers") return Output::OutlierCsv;
  throw InvalidInput("unknown output: " + s);
}

inline std::set<Output> parse_outputs(const std::string& comma_list) {
  std::set<Output> outputs;
  std::stringstream ss(comma_list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!std::string(detail::trim(item)).empty())
      outputs.insert(parse_output(std::string(detail::trim(item))));
  if (outputs.empty()) throw InvalidInput("no outputs requested");
  return outputs;
}

// Loads, clusters, evaluates and emits everything the config asks for.
inline void run(const RunConfig& config) {
  if ((config.strategy == Strategy::Alpha) != config.alpha.has_value())
    throw InvalidInput("--alpha is required for the alpha strategy and invalid otherwise");
  const bool want_metrics = config.outputs.count(Output::MetricsJson) > 0;
  if (want_metrics && config.labels_path.empty())
    throw InvalidInput("--labels is required to emit metrics");

  const Dataset dataset = config.input_kind == RunConfig::InputKind::PointsCsv
                              ? load_points_csv(config.input_path)
                              : load_dissimilarity_csv(config.input_path);

  std::optional<FlatPartition> truth;
  if (!config.labels_path.empty()) {
    truth = load_labels_csv(config.labels_path);
    if (truth->n() != dataset.n())
      throw InvalidInput("labels count (" + std::to_string(truth->n()) +
                         ") does not match dataset size (" + std::to_string(dataset.n()) +
                         ")");
  }

  StrategyConfig sc;
  sc.strategy = config.strategy;
  sc.criterion = config.criterion;
  sc.metric = config.metric;
  if (config.alpha) sc.alpha = *config.alpha;
  const Dendrogram dendrogram = cluster(dataset, sc);

  std::filesystem::create_directories(config.out_dir);
  const auto out_path = [&config](const char* name) {
    return (std::filesystem::path(config.out_dir) / name).string();
  };

  if (config.outputs.count(Output::LinkageCsv))
    write_linkage_csv(out_path("linkage.csv"), dendrogram);
  if (config.outputs.count(Output::EventsJson))
    write_events_json(out_path("events.json"), dendrogram);
  if (config.outputs.count(Output::Dot)) write_dot(out_path("dendrogram.dot"), dendrogram);
  if (config.outputs.count(Output::MstCsv))
    write_mst_csv(out_path("mst.csv"), mst_reliable(dataset, config.metric));
  if (config.outputs.count(Output::OutlierCsv))
    write_outliers_csv(out_path("outliers.csv"), dendrogram);
  if (want_metrics) {
    const int k = config.k.value_or(truth->k);
    const FlatPartition pred = cut(dendrogram, k);
    MetricsReport report;
    report.nmi = nmi(*truth, pred);
    report.ari = adjusted_rand(*truth, pred);
    report.v_measure = v_measure(*truth, pred);
    report.k = k;
    report.criterion = config.criterion;
    report.strategy = config.strategy;
    write_metrics_json(out_path("metrics.json"), report);
  }
}

}  // namespace rac::io
