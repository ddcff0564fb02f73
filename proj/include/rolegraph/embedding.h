// Copyright 2026 The Rolegraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Node embeddings and their CSV format.

#ifndef ROLEGRAPH_EMBEDDING_H_
#define ROLEGRAPH_EMBEDDING_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rolegraph/csv.h"
#include "rolegraph/errors.h"
#include "rolegraph/graph.h"
#include "rolegraph/matrix.h"

namespace rolegraph {

struct EmbeddingMatrix {
  DenseMatrix vectors;  // one row per node
  std::string method_tag;

  int64_t node_count() const { return vectors.rows(); }
  int64_t width() const { return vectors.cols(); }
};

inline void CheckFinite(const EmbeddingMatrix& embedding) {
  for (int64_t r = 0; r < embedding.vectors.rows(); ++r) {
    for (int64_t c = 0; c < embedding.vectors.cols(); ++c) {
      if (!std::isfinite(embedding.vectors(r, c))) {
        throw Error(embedding.method_tag +
                    " embedding has a non-finite entry at row " +
                    std::to_string(r) + ", column " + std::to_string(c));
      }
    }
  }
}

inline void WriteEmbeddingCsv(const EmbeddingMatrix& embedding,
                              const NodeTable& nodes, std::ostream& out) {
  if (!embedding.method_tag.empty()) {
    out << "# method=" << embedding.method_tag << '\n';
  }
  out << "id";
  for (int64_t c = 0; c < embedding.width(); ++c) out << ",e" << c;
  out << '\n';
  for (int64_t r = 0; r < embedding.node_count(); ++r) {
    out << EscapeCsvField(nodes.id(static_cast<NodeId>(r)));
    for (const double x : embedding.vectors.row(r)) out << ',' << FormatDouble(x);
    out << '\n';
  }
}

struct EmbeddingTable {
  std::vector<std::string> ids;  // file order
  DenseMatrix vectors;
  std::string method_tag;        // empty when the file carries none
};

// Reads `id,<d numeric columns>`; column names other than `id` are free.
// A leading `# method=<tag>` comment sets the tag.
inline EmbeddingTable ReadEmbeddingCsv(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  int64_t line_number = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_number;
    const auto body = Trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto meta = Trim(body.substr(1));
      if (meta.starts_with("method=")) {
        table.method_tag = std::string(Trim(meta.substr(7)));
      }
      continue;
    }
    header = SplitCsvLine(body, line_number);
  }
  if (header.empty()) throw ParseError("embedding file is empty", line_number);
  if (header[0] != "id") {
    throw ParseError("embedding header must start with 'id'", line_number);
  }
  const size_t width = header.size() - 1;
  if (width == 0) throw ParseError("embedding has no value columns", line_number);
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_number;
    const auto body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = SplitCsvLine(body, line_number);
    if (fields.size() != width + 1) {
      throw ParseError("row has " + std::to_string(fields.size() - 1) +
                           " values, expected " + std::to_string(width),
                       line_number);
    }
    table.ids.push_back(fields[0]);
    for (size_t c = 1; c <= width; ++c) {
      const auto x = ParseDouble(fields[c]);
      if (!x || !std::isfinite(*x)) {
        throw ParseError("non-numeric embedding cell '" + fields[c] + "'",
                         line_number);
      }
      values.push_back(*x);
    }
  }
  table.vectors = DenseMatrix(static_cast<int64_t>(table.ids.size()),
                              static_cast<int64_t>(width));
  table.vectors.data() = std::move(values);
  return table;
}

// Loads an externally computed embedding and reorders its rows to the node
// order of `nodes`. The tag comes from the file's metadata line, else from
// the file name stem.
inline EmbeddingMatrix ImportEmbedding(const std::string& path,
                                       const NodeTable& nodes) {
  auto in = OpenForRead(path);
  EmbeddingTable table;
  try {
    table = ReadEmbeddingCsv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  const auto row_of = AlignIds(table.ids, nodes, path);
  EmbeddingMatrix out;
  out.vectors = table.vectors.SelectRows(row_of);
  out.method_tag = table.method_tag.empty()
                       ? std::filesystem::path(path).stem().string()
                       : table.method_tag;
  return out;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_EMBEDDING_H_
