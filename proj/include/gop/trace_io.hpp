#ifndef GOP_TRACE_IO_HPP
#define GOP_TRACE_IO_HPP

#include "gop/core.hpp"

#include <vector>

namespace gop {

/// CSV with header iter,x1..xd,f,best_f,target,acq_score,wall_ms.
/// The target field is empty for design points and EI-mode iterations.
/// Numbers are printed with %.17g, so identical runs serialize byte-identically.
std::string format_trace_csv(const std::vector<TraceRecord>& trace);

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRecord>& trace);

struct RunSummary {
  std::string method;
  double best_value = 0.0;
  Vector best_point;
  int evals = 0;
  std::int64_t wall_ms = 0;
};

RunSummary summarize(const std::string& method,
                     const std::vector<TraceRecord>& trace,
                     std::int64_t wall_ms);

/// JSON object with keys method, best_value, best_point, evals, wall_ms.
std::string summary_to_json(const RunSummary& summary);
std::string summaries_to_json(const std::vector<RunSummary>& summaries);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace gop

#endif  // GOP_TRACE_IO_HPP
