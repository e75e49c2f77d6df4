#include "evowave/operators.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace evowave {

namespace {

// Row-major multi-index bookkeeping, last axis fastest.
struct Shape {
  int dim = 1;
  std::array<long, 3> n{1, 1, 1};

  long size() const {
    long s = 1;
    for (int a = 0; a < dim; ++a) s *= n[static_cast<size_t>(a)];
    return s;
  }
  long index(const std::array<long, 3>& c) const {
    long idx = 0;
    for (int a = 0; a < dim; ++a)
      idx = idx * n[static_cast<size_t>(a)] + c[static_cast<size_t>(a)];
    return idx;
  }
  void coord(long idx, std::array<long, 3>& c) const {
    for (int a = dim - 1; a >= 0; --a) {
      c[static_cast<size_t>(a)] = idx % n[static_cast<size_t>(a)];
      idx /= n[static_cast<size_t>(a)];
    }
  }
};

Shape cell_shape(const Grid& g) {
  Shape s;
  s.dim = g.dim();
  for (int a = 0; a < g.dim(); ++a) s.n[static_cast<size_t>(a)] = g.count(a);
  return s;
}

Shape face_shape(const Grid& g, int axis) {
  Shape s = cell_shape(g);
  s.n[static_cast<size_t>(axis)] += 1;
  return s;
}

struct GradContext {
  int d = 1;
  long cells = 0;
  Shape cshape;
  std::array<Shape, 3> fshape;
  std::array<double, 3> inv_h{1.0, 1.0, 1.0};
  std::array<long, 10> joff{};  // block offsets, d*d + 1 entries used
};

GradContext make_grad_context(const Grid& g) {
  GradContext ctx;
  ctx.d = g.dim();
  ctx.cells = g.cells();
  ctx.cshape = cell_shape(g);
  long off = 0;
  for (int i = 0; i < ctx.d; ++i)
    for (int j = 0; j < ctx.d; ++j) {
      ctx.joff[static_cast<size_t>(i * ctx.d + j)] = off;
      off += g.faces(j);
    }
  ctx.joff[static_cast<size_t>(ctx.d * ctx.d)] = off;
  for (int a = 0; a < ctx.d; ++a) {
    ctx.fshape[static_cast<size_t>(a)] = face_shape(g, a);
    ctx.inv_h[static_cast<size_t>(a)] = 1.0 / g.spacing(a);
  }
  return ctx;
}

}  // namespace

LinearOperator build_grad_dirichlet(const Grid& g) {
  if (g.cells() <= 0) throw DimensionError("grad: empty grid");
  const GradContext ctx = make_grad_context(g);
  const long vel_len = static_cast<long>(ctx.d) * ctx.cells;
  const long jac_len = ctx.joff[static_cast<size_t>(ctx.d * ctx.d)];

  auto fwd = [ctx](std::span<const double> x, std::span<double> y) {
    std::array<long, 3> c{0, 0, 0};
    for (int i = 0; i < ctx.d; ++i) {
      const double* u = x.data() + static_cast<size_t>(i) * ctx.cells;
      for (int j = 0; j < ctx.d; ++j) {
        const Shape& fs = ctx.fshape[static_cast<size_t>(j)];
        double* out = y.data() + ctx.joff[static_cast<size_t>(i * ctx.d + j)];
        const long nfaces = fs.size();
        const long nj = ctx.cshape.n[static_cast<size_t>(j)];
        const double ih = ctx.inv_h[static_cast<size_t>(j)];
        for (long f = 0; f < nfaces; ++f) {
          fs.coord(f, c);
          const long fj = c[static_cast<size_t>(j)];
          double right = 0.0, left = 0.0;
          if (fj <= nj - 1) right = u[ctx.cshape.index(c)];
          if (fj >= 1) {
            c[static_cast<size_t>(j)] = fj - 1;
            left = u[ctx.cshape.index(c)];
            c[static_cast<size_t>(j)] = fj;
          }
          out[f] = (right - left) * ih;
        }
      }
    }
  };
  auto adj = [ctx](std::span<const double> w, std::span<double> x) {
    std::array<long, 3> c{0, 0, 0};
    for (int i = 0; i < ctx.d; ++i) {
      double* out = x.data() + static_cast<size_t>(i) * ctx.cells;
      for (long cell = 0; cell < ctx.cells; ++cell) {
        ctx.cshape.coord(cell, c);
        double s = 0.0;
        for (int j = 0; j < ctx.d; ++j) {
          const Shape& fs = ctx.fshape[static_cast<size_t>(j)];
          const double* wij = w.data() + ctx.joff[static_cast<size_t>(i * ctx.d + j)];
          const long cj = c[static_cast<size_t>(j)];
          const long flo = fs.index(c);
          c[static_cast<size_t>(j)] = cj + 1;
          const long fhi = fs.index(c);
          c[static_cast<size_t>(j)] = cj;
          s += (wij[flo] - wij[fhi]) * ctx.inv_h[static_cast<size_t>(j)];
        }
        out[cell] = s;
      }
    }
  };
  return LinearOperator(vel_len, jac_len, fwd, adj);
}

LinearOperator weak_div(const LinearOperator& grad) {
  return scale(-1.0, grad.transpose());
}

LinearOperator face_to_cell_average(const Grid& g) {
  const GradContext ctx = make_grad_context(g);
  const long jac_len = ctx.joff[static_cast<size_t>(ctx.d * ctx.d)];
  const long mat_len = static_cast<long>(ctx.d) * ctx.d * ctx.cells;

  auto fwd = [ctx](std::span<const double> w, std::span<double> y) {
    std::array<long, 3> c{0, 0, 0};
    for (int i = 0; i < ctx.d; ++i)
      for (int j = 0; j < ctx.d; ++j) {
        const Shape& fs = ctx.fshape[static_cast<size_t>(j)];
        const double* wij = w.data() + ctx.joff[static_cast<size_t>(i * ctx.d + j)];
        double* out =
            y.data() + static_cast<size_t>(i * ctx.d + j) * ctx.cells;
        for (long cell = 0; cell < ctx.cells; ++cell) {
          ctx.cshape.coord(cell, c);
          const long cj = c[static_cast<size_t>(j)];
          const long flo = fs.index(c);
          c[static_cast<size_t>(j)] = cj + 1;
          const long fhi = fs.index(c);
          c[static_cast<size_t>(j)] = cj;
          out[cell] = 0.5 * (wij[flo] + wij[fhi]);
        }
      }
  };
  auto adj = [ctx](std::span<const double> m, std::span<double> w) {
    std::array<long, 3> c{0, 0, 0};
    for (int i = 0; i < ctx.d; ++i)
      for (int j = 0; j < ctx.d; ++j) {
        const Shape& fs = ctx.fshape[static_cast<size_t>(j)];
        const double* mij =
            m.data() + static_cast<size_t>(i * ctx.d + j) * ctx.cells;
        double* out = w.data() + ctx.joff[static_cast<size_t>(i * ctx.d + j)];
        const long nfaces = fs.size();
        const long nj = ctx.cshape.n[static_cast<size_t>(j)];
        for (long f = 0; f < nfaces; ++f) {
          fs.coord(f, c);
          const long fj = c[static_cast<size_t>(j)];
          double s = 0.0;
          if (fj <= nj - 1) s += mij[ctx.cshape.index(c)];
          if (fj >= 1) {
            c[static_cast<size_t>(j)] = fj - 1;
            s += mij[ctx.cshape.index(c)];
            c[static_cast<size_t>(j)] = fj;
          }
          out[f] = 0.5 * s;
        }
      }
  };
  return LinearOperator(jac_len, mat_len, fwd, adj);
}

LinearOperator sym_projection(int dim, long points) {
  if (dim < 1 || dim > 3) throw DimensionError("sym_projection: dim must be 1..3");
  if (points < 1) throw DimensionError("sym_projection: points must be >= 1");
  const VoigtMap vm = voigt_map(dim);
  const long dom = static_cast<long>(dim) * dim * points;
  const long cod = static_cast<long>(vm.s) * points;
  const double inv_r2 = 1.0 / std::sqrt(2.0);

  auto fwd = [vm, dim, points, inv_r2](std::span<const double> x,
                                       std::span<double> y) {
    for (int q = 0; q < vm.s; ++q) {
      const int i = vm.row[static_cast<size_t>(q)];
      const int j = vm.col[static_cast<size_t>(q)];
      const double* a = x.data() + static_cast<size_t>(i * dim + j) * points;
      double* out = y.data() + static_cast<size_t>(q) * points;
      if (i == j) {
        for (long p = 0; p < points; ++p) out[p] = a[p];
      } else {
        const double* b = x.data() + static_cast<size_t>(j * dim + i) * points;
        for (long p = 0; p < points; ++p) out[p] = (a[p] + b[p]) * inv_r2;
      }
    }
  };
  auto adj = [vm, dim, points, inv_r2](std::span<const double> v,
                                       std::span<double> x) {
    std::fill(x.begin(), x.end(), 0.0);
    for (int q = 0; q < vm.s; ++q) {
      const int i = vm.row[static_cast<size_t>(q)];
      const int j = vm.col[static_cast<size_t>(q)];
      const double* in = v.data() + static_cast<size_t>(q) * points;
      double* a = x.data() + static_cast<size_t>(i * dim + j) * points;
      if (i == j) {
        for (long p = 0; p < points; ++p) a[p] = in[p];
      } else {
        double* b = x.data() + static_cast<size_t>(j * dim + i) * points;
        for (long p = 0; p < points; ++p) {
          a[p] = in[p] * inv_r2;
          b[p] = in[p] * inv_r2;
        }
      }
    }
  };
  return LinearOperator(dom, cod, fwd, adj);
}

LinearOperator trace_op(int dim, long points) {
  if (dim < 1 || dim > 3) throw DimensionError("trace_op: dim must be 1..3");
  if (points < 1) throw DimensionError("trace_op: points must be >= 1");
  const long dom = static_cast<long>(dim) * dim * points;

  auto fwd = [dim, points](std::span<const double> x, std::span<double> y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < dim; ++i) {
      const double* a = x.data() + static_cast<size_t>(i * dim + i) * points;
      for (long p = 0; p < points; ++p) y[static_cast<size_t>(p)] += a[p];
    }
  };
  auto adj = [dim, points](std::span<const double> v, std::span<double> x) {
    std::fill(x.begin(), x.end(), 0.0);
    for (int i = 0; i < dim; ++i) {
      double* a = x.data() + static_cast<size_t>(i * dim + i) * points;
      for (long p = 0; p < points; ++p) a[p] = v[static_cast<size_t>(p)];
    }
  };
  return LinearOperator(dom, points, fwd, adj);
}

LinearOperator restriction(const Grid& g, Label label, int components) {
  if (components < 1) throw DimensionError("restriction: components must be >= 1");
  std::vector<long> ids;
  for (long c = 0; c < g.cells(); ++c)
    if (g.label(c) == label) ids.push_back(c);
  if (ids.empty())
    throw DimensionError(std::string("restriction: no cells carry label ") +
                         to_string(label));
  const long n = g.cells();
  const long k = static_cast<long>(ids.size());

  auto fwd = [ids, n, k, components](std::span<const double> x, std::span<double> y) {
    for (int b = 0; b < components; ++b) {
      const double* in = x.data() + static_cast<size_t>(b) * n;
      double* out = y.data() + static_cast<size_t>(b) * k;
      for (long m = 0; m < k; ++m) out[m] = in[ids[static_cast<size_t>(m)]];
    }
  };
  auto adj = [ids, n, k, components](std::span<const double> y, std::span<double> x) {
    std::fill(x.begin(), x.end(), 0.0);
    for (int b = 0; b < components; ++b) {
      const double* in = y.data() + static_cast<size_t>(b) * k;
      double* out = x.data() + static_cast<size_t>(b) * n;
      for (long m = 0; m < k; ++m) out[ids[static_cast<size_t>(m)]] = in[m];
    }
  };
  return LinearOperator(components * n, components * k, fwd, adj);
}

SkewPair mother(const LinearOperator& c) {
  const long n0 = c.domain_dim();
  const long n1 = c.codomain_dim();
  const long n = n0 + n1;
  auto fwd = [c, n0](std::span<const double> x, std::span<double> y) {
    auto y0 = y.first(static_cast<size_t>(n0));
    c.apply_adjoint(x.subspan(static_cast<size_t>(n0)), y0);
    for (auto& v : y0) v = -v;
    c.apply(x.first(static_cast<size_t>(n0)), y.subspan(static_cast<size_t>(n0)));
  };
  auto adj = [c, n0](std::span<const double> x, std::span<double> y) {
    c.apply_adjoint(x.subspan(static_cast<size_t>(n0)),
                    y.first(static_cast<size_t>(n0)));
    auto y1 = y.subspan(static_cast<size_t>(n0));
    c.apply(x.first(static_cast<size_t>(n0)), y1);
    for (auto& v : y1) v = -v;
  };
  return SkewPair{LinearOperator(n, n, fwd, adj), c};
}

SkewPair descendant(const SkewPair& mother_a, const LinearOperator& b) {
  if (b.domain_dim() != mother_a.lower_left.codomain_dim())
    throw DimensionError(
        "descendant: B is not codomain-compatible with the mother's lower-left "
        "block");
  return mother(compose(b, mother_a.lower_left));
}

SkewPair build_elastic_A(const Grid& g) {
  const int d = g.dim();
  auto b = compose(sym_projection(d, g.cells()), face_to_cell_average(g));
  return descendant(mother(scale(-1.0, build_grad_dirichlet(g))), b);
}

SkewPair build_acoustic_A(const Grid& g) {
  const int d = g.dim();
  auto b = compose(trace_op(d, g.cells()), face_to_cell_average(g));
  return descendant(mother(scale(-1.0, build_grad_dirichlet(g))), b);
}

SkewPair build_coupled_A(const Grid& g) {
  if (!g.has_label(Label::Elastic) || !g.has_label(Label::Acoustic))
    throw DimensionError(
        "coupled operator: grid must contain elastic and acoustic cells");
  const int d = g.dim();
  const long n = g.cells();
  const int s = d * (d + 1) / 2;
  auto rows = vstack(
      compose(restriction(g, Label::Elastic, s), sym_projection(d, n)),
      scale(-1.0, compose(restriction(g, Label::Acoustic, 1), trace_op(d, n))));
  auto b = compose(rows, face_to_cell_average(g));
  return descendant(mother(scale(-1.0, build_grad_dirichlet(g))), b);
}

WindowInfo order_dependence_window(long n) {
  if (n < 8) throw DimensionError("order_dependence_example: need n >= 8");
  const double h = 2.0 / static_cast<double>(n);
  long first = -1, last = -1;
  for (long k = 0; k < n; ++k) {
    const double center = -1.0 + (static_cast<double>(k) + 0.5) * h;
    if (center > -0.5 && center < 0.5) {
      if (first < 0) first = k;
      last = k;
    }
  }
  if (first < 0 || last - first + 1 < 2)
    throw DimensionError("order_dependence_example: window unresolved by grid");
  return WindowInfo{first, last, first, last + 1};
}

std::pair<LinearOperator, LinearOperator> order_dependence_example(long n) {
  const WindowInfo w = order_dependence_window(n);
  const double h = 2.0 / static_cast<double>(n);
  const std::array<long, 1> counts{n};
  const std::array<double, 1> spacing{h};
  Grid g = Grid::uniform(1, counts, spacing, Label::Elastic);
  auto grad = build_grad_dirichlet(g);

  std::vector<double> xc(static_cast<size_t>(n), 0.0);
  for (long k = w.first_cell; k <= w.last_cell; ++k)
    xc[static_cast<size_t>(k)] = 1.0;
  std::vector<double> open(static_cast<size_t>(n + 1), 0.0);
  for (long f = w.lower_face + 1; f <= w.upper_face - 1; ++f)
    open[static_cast<size_t>(f)] = 1.0;
  std::vector<double> closed(static_cast<size_t>(n + 1), 0.0);
  for (long f = w.lower_face; f <= w.upper_face; ++f)
    closed[static_cast<size_t>(f)] = 1.0;

  auto cut_cells = diagonal_operator(std::move(xc));
  auto c_d2 = compose(diagonal_operator(std::move(open)), compose(grad, cut_cells));
  auto c_d1 = compose(diagonal_operator(std::move(closed)), compose(grad, cut_cells));
  return {mother(c_d2).op, mother(c_d1).op};
}

}  // namespace evowave
