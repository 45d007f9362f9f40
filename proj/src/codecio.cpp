#include "fraccut/codecio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fraccut/rational.hpp"

namespace fraccut {

namespace {

// Line-aware tokenizer so errors can name the offending line.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line with at least one token; empty or whitespace-only lines are
  // skipped. Returns false at end of input.
  bool next(std::vector<std::size_t>& tokens, std::size_t& line_no) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      std::istringstream ss(line);
      tokens.clear();
      std::string word;
      bool bad = false;
      while (ss >> word) {
        if (!std::all_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          bad = true;
          break;
        }
        errno = 0;
        unsigned long long v = std::stoull(word);
        tokens.push_back(static_cast<std::size_t>(v));
      }
      if (bad) throw ParseError("line " + std::to_string(line_) + ": non-numeric token");
      if (!tokens.empty()) {
        line_no = line_;
        return true;
      }
    }
    return false;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<std::size_t> expect_counts(LineReader& reader, std::size_t count, const char* what) {
  std::vector<std::size_t> tokens;
  std::vector<std::size_t> out;
  std::size_t line_no = 0;
  while (out.size() < count) {
    if (!reader.next(tokens, line_no)) {
      throw ParseError(std::string("unexpected end of input while reading ") + what);
    }
    for (std::size_t v : tokens) {
      if (out.size() == count) {
        throw ParseError("line " + std::to_string(line_no) + ": too many values for " +
                         std::string(what));
      }
      out.push_back(v);
    }
  }
  return out;
}

// One adjacency line: exactly `deg` indices, or max_deg entries where the
// trailing max_deg - deg are zero padding.
std::vector<std::size_t> expect_index_line(LineReader& reader, std::size_t deg,
                                           std::size_t max_deg, std::size_t bound,
                                           const char* what, std::size_t ordinal) {
  std::vector<std::size_t> tokens;
  std::size_t line_no = 0;
  if (!reader.next(tokens, line_no)) {
    throw ParseError(std::string("unexpected end of input while reading ") + what + " " +
                     std::to_string(ordinal));
  }
  std::string where = "line " + std::to_string(line_no);
  if (deg == 0) {
    // An empty list cannot be a blank line (those are skipped), so it is
    // one or more padding zeros.
    if (tokens.size() > std::max<std::size_t>(max_deg, 1)) {
      throw ParseError(where + ": expected only padding for " + what + " " +
                       std::to_string(ordinal));
    }
  } else if (tokens.size() != deg && tokens.size() != max_deg) {
    throw ParseError(where + ": expected " + std::to_string(deg) + " indices for " + what + " " +
                     std::to_string(ordinal) + ", got " + std::to_string(tokens.size()));
  }
  std::vector<std::size_t> indices(tokens.begin(), tokens.begin() + static_cast<long>(deg));
  for (std::size_t i = deg; i < tokens.size(); ++i) {
    if (tokens[i] != 0) {
      throw ParseError(where + ": nonzero entry beyond the declared degree");
    }
  }
  std::vector<bool> seen(bound + 1, false);
  for (std::size_t v : indices) {
    if (v < 1 || v > bound) {
      throw ParseError(where + ": index " + std::to_string(v) + " outside 1.." +
                       std::to_string(bound));
    }
    if (seen[v]) throw ParseError(where + ": repeated index " + std::to_string(v));
    seen[v] = true;
  }
  return indices;
}

std::string sig6(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", q.get_d());
  return buf;
}

}  // namespace

AlistDocument alist_from_matrix(const BitMatrix& h) {
  AlistDocument doc;
  doc.n = h.cols();
  doc.m = h.rows();
  doc.col_lists.assign(doc.n, {});
  doc.row_lists.assign(doc.m, {});
  for (std::size_t i = 0; i < doc.m; ++i) {
    for (int j : h.row(i).support()) {
      doc.row_lists[i].push_back(static_cast<std::size_t>(j) + 1);
      doc.col_lists[static_cast<std::size_t>(j)].push_back(i + 1);
    }
  }
  doc.col_degs.resize(doc.n);
  doc.row_degs.resize(doc.m);
  for (std::size_t j = 0; j < doc.n; ++j) {
    doc.col_degs[j] = doc.col_lists[j].size();
    doc.max_col_deg = std::max(doc.max_col_deg, doc.col_degs[j]);
  }
  for (std::size_t i = 0; i < doc.m; ++i) {
    doc.row_degs[i] = doc.row_lists[i].size();
    doc.max_row_deg = std::max(doc.max_row_deg, doc.row_degs[i]);
  }
  return doc;
}

BitMatrix matrix_from_alist(const AlistDocument& doc) {
  if (doc.n == 0 || doc.m == 0) throw ParseError("alist: empty dimensions");
  BitMatrix h(doc.m, doc.n);
  for (std::size_t i = 0; i < doc.m; ++i) {
    for (std::size_t v : doc.row_lists[i]) h.set(i, v - 1, true);
  }
  // The column lists must describe the same incidence set.
  for (std::size_t j = 0; j < doc.n; ++j) {
    std::vector<std::size_t> from_rows;
    for (std::size_t i = 0; i < doc.m; ++i) {
      if (h.get(i, j)) from_rows.push_back(i + 1);
    }
    std::vector<std::size_t> declared = doc.col_lists[j];
    std::sort(declared.begin(), declared.end());
    if (from_rows != declared) {
      throw ParseError("alist: column list " + std::to_string(j + 1) +
                       " disagrees with the row lists");
    }
  }
  return h;
}

AlistDocument parse_alist(std::istream& in) {
  LineReader reader(in);
  std::vector<std::size_t> tokens;
  std::size_t line_no = 0;
  if (!reader.next(tokens, line_no)) throw ParseError("alist: empty input");
  if (tokens.size() != 2) {
    throw ParseError("line " + std::to_string(line_no) + ": header must be 'n m'");
  }
  AlistDocument doc;
  doc.n = tokens[0];
  doc.m = tokens[1];
  if (doc.n == 0 || doc.m == 0) {
    throw ParseError("line " + std::to_string(line_no) + ": zero dimension");
  }
  if (!reader.next(tokens, line_no) || tokens.size() != 2) {
    throw ParseError("alist: missing maximum degree line");
  }
  doc.max_col_deg = tokens[0];
  doc.max_row_deg = tokens[1];
  doc.col_degs = expect_counts(reader, doc.n, "column degrees");
  doc.row_degs = expect_counts(reader, doc.m, "row degrees");
  std::size_t col_max = *std::max_element(doc.col_degs.begin(), doc.col_degs.end());
  std::size_t row_max = *std::max_element(doc.row_degs.begin(), doc.row_degs.end());
  if (col_max != doc.max_col_deg || row_max != doc.max_row_deg) {
    throw ParseError("alist: declared maximum degrees disagree with the degree lists");
  }
  std::uint64_t col_edges = 0, row_edges = 0;
  for (std::size_t d : doc.col_degs) col_edges += d;
  for (std::size_t d : doc.row_degs) row_edges += d;
  if (col_edges != row_edges) {
    throw ParseError("alist: column and row degree totals disagree");
  }
  for (std::size_t j = 0; j < doc.n; ++j) {
    doc.col_lists.push_back(
        expect_index_line(reader, doc.col_degs[j], doc.max_col_deg, doc.m, "column", j + 1));
  }
  for (std::size_t i = 0; i < doc.m; ++i) {
    doc.row_lists.push_back(
        expect_index_line(reader, doc.row_degs[i], doc.max_row_deg, doc.n, "row", i + 1));
  }
  if (reader.next(tokens, line_no)) {
    throw ParseError("line " + std::to_string(line_no) + ": trailing data after the row lists");
  }
  return doc;
}

BitMatrix read_alist_matrix(std::istream& in) { return matrix_from_alist(parse_alist(in)); }

void write_alist(std::ostream& out, const BitMatrix& h) {
  AlistDocument doc = alist_from_matrix(h);
  out << doc.n << " " << doc.m << "\n";
  out << doc.max_col_deg << " " << doc.max_row_deg << "\n";
  for (std::size_t j = 0; j < doc.n; ++j) out << doc.col_degs[j] << (j + 1 < doc.n ? " " : "\n");
  for (std::size_t i = 0; i < doc.m; ++i) out << doc.row_degs[i] << (i + 1 < doc.m ? " " : "\n");
  for (const auto& list : doc.col_lists) {
    if (list.empty()) out << 0;  // an empty list is a lone padding zero
    for (std::size_t k = 0; k < list.size(); ++k) out << list[k] << (k + 1 < list.size() ? " " : "");
    out << "\n";
  }
  for (const auto& list : doc.row_lists) {
    if (list.empty()) out << 0;
    for (std::size_t k = 0; k < list.size(); ++k) out << list[k] << (k + 1 < list.size() ? " " : "");
    out << "\n";
  }
}

BitMatrix parse_dense(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t m = 0, n = 0;
  bool have_header = false;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    ++line_no;
    std::string compact;
    for (char c : line) {
      if (c == ' ' || c == '\t' || c == '\r') continue;
      compact += c;
    }
    if (compact.empty()) continue;
    if (!have_header) {
      std::istringstream ss(line);
      if (!(ss >> m >> n)) {
        throw ParseError("line " + std::to_string(line_no) + ": dense header must be 'm n'");
      }
      std::string rest;
      if (ss >> rest) {
        throw ParseError("line " + std::to_string(line_no) + ": trailing data in the header");
      }
      if (m == 0 || n == 0) {
        throw ParseError("line " + std::to_string(line_no) + ": zero dimension");
      }
      have_header = true;
      continue;
    }
    if (rows.size() == m) {
      throw ParseError("line " + std::to_string(line_no) + ": more than " + std::to_string(m) +
                       " rows");
    }
    if (compact.size() != n) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                       " entries, got " + std::to_string(compact.size()));
    }
    for (char c : compact) {
      if (c != '0' && c != '1') {
        throw ParseError("line " + std::to_string(line_no) + ": entry '" + std::string(1, c) +
                         "' is not 0 or 1");
      }
    }
    rows.push_back(compact);
  }
  if (!have_header) throw ParseError("dense: empty input");
  if (rows.size() != m) {
    throw ParseError("dense: expected " + std::to_string(m) + " rows, got " +
                     std::to_string(rows.size()));
  }
  return BitMatrix::from_strings(rows);
}

void write_dense(std::ostream& out, const BitMatrix& h) {
  out << h.rows() << " " << h.cols() << "\n";
  for (std::size_t i = 0; i < h.rows(); ++i) out << h.row(i).to_string() << "\n";
}

namespace {

bool has_alist_extension(const std::string& path) {
  return path.size() >= 6 && path.compare(path.size() - 6, 6, ".alist") == 0;
}

bool resolve_alist(const std::string& path, MatrixFormat format) {
  if (format == MatrixFormat::Auto) return has_alist_extension(path);
  return format == MatrixFormat::Alist;
}

}  // namespace

BitMatrix load_matrix(const std::string& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return resolve_alist(path, format) ? read_alist_matrix(in) : parse_dense(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void store_matrix(const std::string& path, const BitMatrix& h, MatrixFormat format) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  if (resolve_alist(path, format)) {
    write_alist(out, h);
  } else {
    write_dense(out, h);
  }
  if (!out) throw ParseError("failed writing '" + path + "'");
}

std::string cut_record_line(const CutRecord& rec) {
  std::string s = "iteration=" + std::to_string(rec.iteration);
  s += " d_frac_before=" + to_annotated(rec.d_frac_before);
  s += " d_frac_after=" + to_annotated(rec.d_frac_after);
  s += " redundant_row=" + rec.redundant_row.to_string();
  s += " target_vertex=" + vector_str(rec.target_vertex);
  s += " gamma_size_before=" + std::to_string(rec.gamma_size_before);
  return s;
}

void write_cut_log(std::ostream& out, const std::vector<CutRecord>& log) {
  for (const CutRecord& rec : log) out << cut_record_line(rec) << "\n";
}

void write_sim_csv(std::ostream& out, const std::vector<SimPoint>& points) {
  out << "crossover,trials,block_errors,bler,seed\n";
  for (const SimPoint& p : points) {
    out << sig6(p.crossover) << "," << p.trials << "," << p.block_errors << "," << sig6(p.bler)
        << "," << p.seed << "\n";
  }
}

}  // namespace fraccut
