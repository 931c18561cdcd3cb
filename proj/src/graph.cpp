#include "dgs/graph.hpp"

#include "dgs/random.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace dgs {

namespace {

constexpr int kGraph6Low = 63;
constexpr int kGraph6High = 126;

std::size_t idx(int n, int i, int j) { return static_cast<std::size_t>(i) * n + j; }

// Colour refinement over the disjoint union of the given graphs. Colours
// are ranks of sorted signatures, so they are comparable across graphs.
std::vector<std::vector<int>> refine_colours(std::span<const Graph* const> graphs) {
  std::vector<std::vector<int>> colour(graphs.size());
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    const Graph& g = *graphs[k];
    colour[k].resize(g.order());
    for (int v = 0; v < g.order(); ++v) colour[k][v] = g.degree(v);
  }
  std::size_t classes = 0;
  for (;;) {
    using Signature = std::vector<int>;
    std::vector<std::vector<Signature>> sigs(graphs.size());
    std::vector<Signature> all;
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      const Graph& g = *graphs[k];
      for (int v = 0; v < g.order(); ++v) {
        Signature s{colour[k][v]};
        std::vector<int> nb;
        for (int u = 0; u < g.order(); ++u)
          if (g.adjacent(v, u)) nb.push_back(colour[k][u]);
        std::sort(nb.begin(), nb.end());
        s.insert(s.end(), nb.begin(), nb.end());
        sigs[k].push_back(s);
        all.push_back(std::move(s));
      }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (std::size_t k = 0; k < graphs.size(); ++k)
      for (std::size_t v = 0; v < sigs[k].size(); ++v)
        colour[k][v] = static_cast<int>(std::lower_bound(all.begin(), all.end(), sigs[k][v]) - all.begin());
    if (all.size() == classes) break;
    classes = all.size();
  }
  return colour;
}

std::uint64_t code_under(const Graph& g, std::span<const int> order) {
  // order[p] = vertex placed at position p.
  const int n = g.order();
  std::uint64_t code = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) code = (code << 1) | (g.adjacent(order[i], order[j]) ? 1u : 0u);
  return code;
}

}  // namespace

// Graph -----------------------------------------------------------------

Graph::Graph(int n, std::vector<std::uint8_t> adjacency) : n_(n), adj_(std::move(adjacency)) {
  if (n < 1) throw std::invalid_argument("graph order must be positive");
  if (adj_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("adjacency array size does not match n*n");
  for (int i = 0; i < n; ++i) {
    if (adj_[idx(n, i, i)] != 0) throw std::invalid_argument("loop at vertex " + std::to_string(i));
    for (int j = i + 1; j < n; ++j) {
      auto& a = adj_[idx(n, i, j)];
      auto& b = adj_[idx(n, j, i)];
      if ((a != 0) != (b != 0))
        throw std::invalid_argument("asymmetric adjacency at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      a = b = (a != 0) ? 1 : 0;
    }
  }
}

Graph Graph::empty(int n) { return Graph(n, std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(n, 0)) * std::max(n, 0), 0)); }

Graph Graph::complete(int n) { return complement(empty(n)); }

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  if (n < 1) throw std::invalid_argument("graph order must be positive");
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw std::invalid_argument("bad edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    a[idx(n, u, v)] = a[idx(n, v, u)] = 1;
  }
  return Graph(n, std::move(a));
}

int Graph::degree(int v) const {
  int d = 0;
  for (int u = 0; u < n_; ++u) d += adj_[idx(n_, v, u)];
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t m = 0;
  for (auto b : adj_) m += b;
  return m / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adjacent(i, j)) out.emplace_back(i, j);
  return out;
}

Graph Graph::relabel(std::span<const int> perm) const {
  if (perm.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("permutation has wrong length");
  std::vector<char> seen(n_, 0);
  for (int p : perm) {
    if (p < 0 || p >= n_ || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = 1;
  }
  std::vector<std::uint8_t> a(adj_.size(), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) a[idx(n_, perm[i], perm[j])] = adj_[idx(n_, i, j)];
  return Graph(n_, std::move(a));
}

// graph6 ------------------------------------------------------------------

Graph parse_graph6(std::string_view text) {
  std::ptrdiff_t base = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.starts_with(header)) {
    text.remove_prefix(header.size());
    base = static_cast<std::ptrdiff_t>(header.size());
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("graph6: empty record", base);

  auto byte_at = [&](std::size_t pos) -> int {
    if (pos >= text.size()) throw ParseError("graph6: truncated header", base + static_cast<std::ptrdiff_t>(pos));
    int c = static_cast<unsigned char>(text[pos]);
    if (c < kGraph6Low || c > kGraph6High)
      throw ParseError("graph6: byte " + std::to_string(c) + " outside 63..126", base + static_cast<std::ptrdiff_t>(pos));
    return c - kGraph6Low;
  };

  std::size_t pos = 0;
  long long n = 0;
  if (byte_at(0) != 63) {
    n = byte_at(0);
    pos = 1;
  } else if (text.size() > 1 && byte_at(1) != 63) {
    for (std::size_t k = 1; k <= 3; ++k) n = (n << 6) | byte_at(k);
    pos = 4;
    if (n < 63) throw ParseError("graph6: non-canonical order encoding", base);
  } else {
    for (std::size_t k = 2; k <= 7; ++k) n = (n << 6) | byte_at(k);
    pos = 8;
    if (n < 258048) throw ParseError("graph6: non-canonical order encoding", base);
  }
  if (n < 1) throw ParseError("graph6: graphs of order 0 are not supported", base);
  if (n > 100000) throw ParseError("graph6: order too large", base);

  const int order = static_cast<int>(n);
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t payload = (bits + 5) / 6;
  if (text.size() - pos < payload)
    throw ParseError("graph6: truncated bit payload (expected " + std::to_string(payload) + " bytes)",
                     base + static_cast<std::ptrdiff_t>(text.size()));
  if (text.size() - pos > payload)
    throw ParseError("graph6: trailing bytes after payload", base + static_cast<std::ptrdiff_t>(pos + payload));

  std::vector<std::uint8_t> a(static_cast<std::size_t>(order) * order, 0);
  std::size_t t = 0;
  for (int j = 1; j < order; ++j)
    for (int i = 0; i < j; ++i, ++t) {
      const int chunk = byte_at(pos + t / 6);
      if ((chunk >> (5 - t % 6)) & 1) a[idx(order, i, j)] = a[idx(order, j, i)] = 1;
    }
  if (bits % 6 != 0) {
    const std::size_t last = pos + payload - 1;
    const int pad_mask = (1 << (6 - bits % 6)) - 1;
    if (byte_at(last) & pad_mask)
      throw ParseError("graph6: non-zero padding bits", base + static_cast<std::ptrdiff_t>(last));
  }
  return Graph(order, std::move(a));
}

std::string encode_graph6(const Graph& g) {
  const long long n = g.order();
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(n + kGraph6Low));
  } else if (n < 258048) {
    out.push_back('~');
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + kGraph6Low));
  } else {
    out += "~~";
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + kGraph6Low));
  }
  int chunk = 0, filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + kGraph6Low));
        chunk = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((chunk << (6 - filled)) + kGraph6Low));
  return out;
}

// Adjacency text -------------------------------------------------------

Graph parse_adjacency_text(std::string_view text) {
  std::vector<std::vector<std::uint8_t>> rows;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      std::vector<std::uint8_t> row;
      std::size_t p = 0;
      while (p < line.size()) {
        const char c = line[p];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';' || c == '{' || c == '}' ||
            c == '[' || c == ']' || c == '\\') {
          ++p;
          continue;
        }
        std::size_t q = p;
        while (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q])) &&
               std::string_view(",;{}[]\\").find(line[q]) == std::string_view::npos)
          ++q;
        const std::string_view token = line.substr(p, q - p);
        if (token != "0" && token != "1")
          throw ParseError("adjacency: non-binary token '" + std::string(token) + "'",
                           static_cast<std::ptrdiff_t>(line_start + p), static_cast<int>(rows.size()),
                           static_cast<int>(row.size()));
        row.push_back(token == "1" ? 1 : 0);
        p = q;
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw ParseError("adjacency: no rows", 0);
  std::vector<std::uint8_t> a;
  a.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n)
      throw ParseError("adjacency: non-square matrix (row has " + std::to_string(rows[r].size()) +
                           " entries, expected " + std::to_string(n) + ")",
                       -1, r, static_cast<int>(std::min<std::size_t>(rows[r].size(), n)));
    a.insert(a.end(), rows[r].begin(), rows[r].end());
  }
  for (int i = 0; i < n; ++i) {
    if (rows[i][i] != 0) throw ParseError("adjacency: nonzero diagonal", -1, i, i);
    for (int j = i + 1; j < n; ++j)
      if (rows[i][j] != rows[j][i]) throw ParseError("adjacency: asymmetric", -1, i, j);
  }
  return Graph(n, std::move(a));
}

// Transformations --------------------------------------------------------

Graph complement(const Graph& g) {
  const int n = g.order();
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) a[idx(n, i, j)] = g.adjacent(i, j) ? 0 : 1;
  return Graph(n, std::move(a));
}

Graph random_gnp_half(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("graph order must be positive");
  const SplitMix64Stream stream(seed);
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
  std::uint64_t t = 0;
  std::uint64_t word = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++t) {
      if (t % 64 == 0) word = stream.at(t / 64);
      if ((word >> (t % 64)) & 1u) a[idx(n, i, j)] = a[idx(n, j, i)] = 1;
    }
  return Graph(n, std::move(a));
}

// Isomorphism ------------------------------------------------------------

bool is_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.edge_count() != h.edge_count()) return false;
  const int n = g.order();
  const std::array<const Graph*, 2> both{&g, &h};
  const auto colour = refine_colours(both);
  auto cg = colour[0], ch = colour[1];
  std::sort(cg.begin(), cg.end());
  std::sort(ch.begin(), ch.end());
  if (cg != ch) return false;

  // Map g's vertices in order of increasing colour-class size.
  std::map<int, int> class_size;
  for (int c : colour[0]) ++class_size[c];
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return class_size[colour[0][a]] < class_size[colour[0][b]];
  });

  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> extend = [&](int depth) -> bool {
    if (depth == n) return true;
    const int v = order[depth];
    for (int w = 0; w < n; ++w) {
      if (used[w] || colour[1][w] != colour[0][v]) continue;
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) {
        const int u = order[d];
        ok = g.adjacent(v, u) == h.adjacent(w, image[u]);
      }
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      if (extend(depth + 1)) return true;
      used[w] = 0;
      image[v] = -1;
    }
    return false;
  };
  return extend(0);
}

std::uint64_t upper_triangle_code(const Graph& g) {
  if (g.order() > 11) throw std::invalid_argument("upper-triangle code requires n <= 11");
  std::vector<int> id(g.order());
  std::iota(id.begin(), id.end(), 0);
  return code_under(g, id);
}

Graph from_upper_triangle_code(int n, std::uint64_t code) {
  if (n < 1 || n > 11) throw std::invalid_argument("upper-triangle code requires 1 <= n <= 11");
  std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n, 0);
  int bit = n * (n - 1) / 2;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if ((code >> --bit) & 1u) a[idx(n, i, j)] = a[idx(n, j, i)] = 1;
  return Graph(n, std::move(a));
}

std::uint64_t canonical_code(const Graph& g) {
  const int n = g.order();
  if (n > 11) throw std::invalid_argument("canonical form requires n <= 11");
  const std::array<const Graph*, 1> one{&g};
  const auto colour = refine_colours(one)[0];

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return colour[a] != colour[b] ? colour[a] < colour[b] : a < b;
  });
  std::vector<std::pair<int, int>> cells;  // [begin, end) in `order`
  for (int p = 0; p < n;) {
    int q = p;
    while (q < n && colour[order[q]] == colour[order[p]]) ++q;
    cells.emplace_back(p, q);
    p = q;
  }

  std::uint64_t best = 0;
  bool have = false;
  std::function<void(std::size_t)> walk = [&](std::size_t c) {
    if (c == cells.size()) {
      const auto code = code_under(g, order);
      if (!have || code > best) best = code, have = true;
      return;
    }
    auto [b, e] = cells[c];
    std::sort(order.begin() + b, order.begin() + e);
    do {
      walk(c + 1);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  walk(0);
  return best;
}

Graph canonical_form(const Graph& g) { return from_upper_triangle_code(g.order(), canonical_code(g)); }

// GM switching -----------------------------------------------------------

std::span<const int> default_gm_cell_sizes() {
  static constexpr std::array<int, 2> sizes{4, 6};
  return sizes;
}

bool is_valid_gm_partition(const Graph& g, const GmPartition& p) {
  const int n = g.order();
  const int c = static_cast<int>(p.cell.size());
  if (c < 4 || c % 2 != 0) return false;
  std::vector<char> in_cell(n, 0);
  for (int v : p.cell) {
    if (v < 0 || v >= n || in_cell[v]) return false;
    in_cell[v] = 1;
  }
  if (static_cast<int>(p.outside.size()) != n - c) return false;
  for (int v : p.outside)
    if (v < 0 || v >= n || in_cell[v]) return false;

  int reg = -1;
  for (int v : p.cell) {
    int d = 0;
    for (int u : p.cell) d += g.adjacent(v, u) ? 1 : 0;
    if (reg < 0) reg = d;
    if (d != reg) return false;
  }
  for (int v : p.outside) {
    int d = 0;
    for (int u : p.cell) d += g.adjacent(v, u) ? 1 : 0;
    if (d != 0 && d != c / 2 && d != c) return false;
  }
  return true;
}

std::vector<GmPartition> find_gm_partitions(const Graph& g, std::span<const int> cell_sizes) {
  const int n = g.order();
  std::vector<GmPartition> found;
  for (int size : cell_sizes) {
    if (size < 4 || size % 2 != 0 || size > n) continue;
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      GmPartition p;
      p.cell = pick;
      std::vector<char> in_cell(n, 0);
      for (int v : pick) in_cell[v] = 1;
      for (int v = 0; v < n; ++v)
        if (!in_cell[v]) p.outside.push_back(v);
      if (is_valid_gm_partition(g, p)) found.push_back(std::move(p));

      int k = size - 1;
      while (k >= 0 && pick[k] == n - size + k) --k;
      if (k < 0) break;
      ++pick[k];
      for (int m = k + 1; m < size; ++m) pick[m] = pick[m - 1] + 1;
    }
  }
  return found;
}

Graph gm_switch(const Graph& g, const GmPartition& p) {
  if (!is_valid_gm_partition(g, p)) throw std::invalid_argument("gm_switch: invalid GM partition");
  const int n = g.order();
  const int half = static_cast<int>(p.cell.size()) / 2;
  std::vector<std::uint8_t> a = g.raw();
  for (int v : p.outside) {
    int d = 0;
    for (int u : p.cell) d += g.adjacent(v, u) ? 1 : 0;
    if (d != half) continue;
    for (int u : p.cell) {
      const std::uint8_t flipped = g.adjacent(v, u) ? 0 : 1;
      a[idx(n, v, u)] = a[idx(n, u, v)] = flipped;
    }
  }
  return Graph(n, std::move(a));
}

}  // namespace dgs
