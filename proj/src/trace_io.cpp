#include "gop/trace_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gop {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string format_trace_csv(const std::vector<TraceRecord>& trace) {
  std::ostringstream os;
  const int d = trace.empty() ? 0 : static_cast<int>(trace.front().point.size());
  os << "iter";
  for (int j = 1; j <= d; ++j) os << ",x" << j;
  os << ",f,best_f,target,acq_score,wall_ms\n";
  for (const TraceRecord& r : trace) {
    os << r.iteration;
    for (int j = 0; j < d; ++j) os << ',' << fmt(r.point[j]);
    os << ',' << fmt(r.value) << ',' << fmt(r.best_value) << ',';
    if (r.target) os << fmt(*r.target);
    os << ',' << fmt(r.acquisition_score) << ',' << r.wall_time_ms << '\n';
  }
  return os.str();
}

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace) {
  write_text_file(path, format_trace_csv(trace));
}

RunSummary summarize(const std::string& method,
                     const std::vector<TraceRecord>& trace,
                     std::int64_t wall_ms) {
  if (trace.empty()) {
    throw Error(ErrorCode::invalid_argument, "summarize: empty trace");
  }
  RunSummary s;
  s.method = method;
  s.evals = static_cast<int>(trace.size());
  s.wall_ms = wall_ms;
  s.best_value = trace.back().best_value;
  for (const TraceRecord& r : trace) {
    if (r.value == s.best_value) {
      s.best_point = r.point;
      break;  // ties kept at the earlier iterate
    }
  }
  return s;
}

namespace {

nlohmann::ordered_json summary_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["method"] = s.method;
  j["best_value"] = s.best_value;
  j["best_point"] = std::vector<double>(s.best_point.begin(),
                                        s.best_point.end());
  j["evals"] = s.evals;
  j["wall_ms"] = s.wall_ms;
  return j;
}

}  // namespace

std::string summary_to_json(const RunSummary& summary) {
  return summary_json(summary).dump(2) + "\n";
}

std::string summaries_to_json(const std::vector<RunSummary>& summaries) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const RunSummary& s : summaries) arr.push_back(summary_json(s));
  return arr.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::invalid_argument, "cannot open for writing: " + path);
  }
  out << content;
}

}  // namespace gop
