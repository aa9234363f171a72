#include "khspace/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kh {

std::string fnv1a_hex(const std::string& payload) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

static const char* kHeader = "suite,check_id,params_hash,bound,actual,ratio,pass,seed,wall_ms";

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << kHeader << "\n";
  for (const auto& r : rows) {
    os << r.suite << ',' << r.check_id << ',' << r.params_hash << ',' << format_double(r.bound)
       << ',' << format_double(r.actual) << ',' << format_double(r.ratio) << ','
       << (r.pass ? "1" : "0") << ',' << r.seed << ',' << format_double(r.wall_ms) << "\n";
  }
  return os.str();
}

std::vector<ReportRow> rows_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty report");
  if (line != kHeader) throw std::invalid_argument("report schema mismatch");
  std::vector<ReportRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    ReportRow r;
    auto next = [&]() {
      if (!std::getline(ls, tok, ',')) throw std::invalid_argument("malformed report row");
      return tok;
    };
    r.suite = next();
    r.check_id = next();
    r.params_hash = next();
    r.bound = std::stod(next());
    r.actual = std::stod(next());
    r.ratio = std::stod(next());
    r.pass = next() == "1";
    r.seed = std::stoull(next());
    r.wall_ms = std::stod(next());
    rows.push_back(std::move(r));
  }
  return rows;
}

DiffResult report_diff(const std::vector<ReportRow>& older, const std::vector<ReportRow>& newer,
                       double threshold) {
  DiffResult out;
  std::map<std::string, const ReportRow*> index;
  for (const auto& r : older) index[r.suite + "|" + r.check_id + "|" + r.params_hash] = &r;
  for (const auto& r : newer) {
    auto it = index.find(r.suite + "|" + r.check_id + "|" + r.params_hash);
    if (it == index.end()) continue;
    ++out.compared;
    const ReportRow& o = *it->second;
    double drift;
    if (o.ratio == 0.0 && r.ratio == 0.0)
      drift = 0.0;
    else if (o.ratio == 0.0)
      drift = INFINITY;
    else
      drift = std::abs(r.ratio / o.ratio - 1.0);
    if (drift > threshold)
      out.flagged.push_back(DriftEntry{r.suite, r.check_id, o.ratio, r.ratio, drift});
  }
  return out;
}

}  // namespace kh
