#include "qspin/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qspin {

RingMat::RingMat(const RingCtx& ctx, int rows, int cols)
    : ctx_(ctx), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    fail(ErrKind::ShapeMismatch, "negative matrix dimensions");
  e_.assign((std::size_t)rows * cols, RingElem::zero(ctx));
}

RingMat RingMat::identity(const RingCtx& ctx, int n) {
  return scalar(ctx, n, RingElem::one(ctx));
}

RingMat RingMat::scalar(const RingCtx& ctx, int n, const RingElem& c) {
  RingMat m(ctx, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

RingMat RingMat::from_rows(const RingCtx& ctx,
                           std::vector<std::vector<RingElem>> rows) {
  const int r = (int)rows.size();
  const int c = r == 0 ? 0 : (int)rows[0].size();
  RingMat m(ctx, r, c);
  for (int i = 0; i < r; ++i) {
    if ((int)rows[i].size() != c)
      fail(ErrKind::ShapeMismatch, "ragged row lengths");
    for (int j = 0; j < c; ++j) {
      if (rows[i][j].ctx() != ctx)
        fail(ErrKind::CtxMismatch, "entry context differs from matrix");
      m.at(i, j) = std::move(rows[i][j]);
    }
  }
  return m;
}

const RingElem& RingMat::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    fail(ErrKind::ShapeMismatch, "index out of range");
  return e_[(std::size_t)r * cols_ + c];
}

RingElem& RingMat::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    fail(ErrKind::ShapeMismatch, "index out of range");
  return e_[(std::size_t)r * cols_ + c];
}

RingMat RingMat::transpose() const {
  RingMat t(ctx_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RingMat RingMat::operator-() const {
  RingMat r(ctx_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = -at(i, j);
  return r;
}

RingMat operator+(const RingMat& a, const RingMat& b) {
  if (a.ctx_ != b.ctx_) fail(ErrKind::CtxMismatch, "matrix add");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(ErrKind::ShapeMismatch, "matrix add");
  RingMat r(a.ctx_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
  return r;
}

RingMat operator-(const RingMat& a, const RingMat& b) {
  if (a.ctx_ != b.ctx_) fail(ErrKind::CtxMismatch, "matrix sub");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(ErrKind::ShapeMismatch, "matrix sub");
  RingMat r(a.ctx_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
  return r;
}

RingMat operator*(const RingMat& a, const RingMat& b) {
  if (a.ctx_ != b.ctx_) fail(ErrKind::CtxMismatch, "matrix mul");
  if (a.cols_ != b.rows_) fail(ErrKind::ShapeMismatch, "matrix mul");
  RingMat r(a.ctx_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const RingElem& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const RingElem& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  }
  return r;
}

RingMat RingMat::scaled(const RingElem& c) const {
  if (c.ctx() != ctx_) fail(ErrKind::CtxMismatch, "matrix scale");
  RingMat r(ctx_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) * c;
  return r;
}

bool RingMat::operator==(const RingMat& o) const {
  return ctx_ == o.ctx_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

RingMat RingMat::slice(int r0, int c0, int h, int w) const {
  if (r0 < 0 || c0 < 0 || h < 0 || w < 0 || r0 + h > rows_ || c0 + w > cols_)
    fail(ErrKind::ShapeMismatch, "slice out of range");
  RingMat s(ctx_, h, w);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) s.at(i, j) = at(r0 + i, c0 + j);
  return s;
}

RingMat RingMat::eval(const EvalPoint& p) const {
  RingMat r(RingCtx::rational(), rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      r.at(i, j) = RingElem::constant(RingCtx::rational(), at(i, j).eval(p));
  return r;
}

std::string RingMat::to_string() const {
  std::vector<std::string> cells(e_.size());
  std::vector<std::size_t> width(cols_, 0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      cells[(std::size_t)i * cols_ + j] = at(i, j).to_string();
      width[j] = std::max(width[j], cells[(std::size_t)i * cols_ + j].size());
    }
  std::ostringstream out;
  for (int i = 0; i < rows_; ++i) {
    out << "[ ";
    for (int j = 0; j < cols_; ++j) {
      const std::string& s = cells[(std::size_t)i * cols_ + j];
      out << std::string(width[j] - s.size(), ' ') << s
          << (j + 1 < cols_ ? "  " : " ");
    }
    out << "]\n";
  }
  return out.str();
}

RingMat block(const std::vector<std::vector<RingMat>>& grid) {
  if (grid.empty() || grid[0].empty())
    fail(ErrKind::ShapeMismatch, "empty block grid");
  const RingCtx ctx = grid[0][0].ctx();
  const std::size_t bc = grid[0].size();
  std::vector<int> rh(grid.size()), cw(bc);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].size() != bc) fail(ErrKind::ShapeMismatch, "ragged block grid");
    rh[i] = grid[i][0].rows();
    for (std::size_t j = 0; j < bc; ++j) {
      if (grid[i][j].ctx() != ctx) fail(ErrKind::CtxMismatch, "block contexts");
      if (grid[i][j].rows() != rh[i])
        fail(ErrKind::ShapeMismatch, "block row heights");
    }
  }
  for (std::size_t j = 0; j < bc; ++j) {
    cw[j] = grid[0][j].cols();
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (grid[i][j].cols() != cw[j])
        fail(ErrKind::ShapeMismatch, "block column widths");
  }
  int rows = 0, cols = 0;
  for (int h : rh) rows += h;
  for (int w : cw) cols += w;
  RingMat m(ctx, rows, cols);
  int r0 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    int c0 = 0;
    for (std::size_t j = 0; j < bc; ++j) {
      for (int r = 0; r < rh[i]; ++r)
        for (int c = 0; c < cw[j]; ++c)
          m.at(r0 + r, c0 + c) = grid[i][j].at(r, c);
      c0 += cw[j];
    }
    r0 += rh[i];
  }
  return m;
}

RingMat block_sum(const RingMat& a, const RingMat& b) {
  if (a.ctx() != b.ctx()) fail(ErrKind::CtxMismatch, "block sum");
  if (!a.is_square() || !b.is_square())
    fail(ErrKind::NotSquare, "block sum of non-square matrices");
  RingMat z_ab(a.ctx(), a.rows(), b.cols());
  RingMat z_ba(a.ctx(), b.rows(), a.cols());
  return block({{a, z_ab}, {z_ba, b}});
}

namespace {

// Dense mpq copy for the Rational fast paths.
std::vector<std::vector<mpq_class>> to_mpq(const RingMat& a) {
  std::vector<std::vector<mpq_class>> m(a.rows(),
                                        std::vector<mpq_class>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m[i][j] = a.at(i, j).as_rational();
  return m;
}

mpq_class det_gauss(std::vector<std::vector<mpq_class>> m) {
  const int n = (int)m.size();
  mpq_class d(1);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (m[i][k] != 0) {
        p = i;
        break;
      }
    if (p < 0) return mpq_class(0);
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    d *= m[k][k];
    for (int i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      mpq_class f = m[i][k] / m[k][k];
      for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

}  // namespace

// Berkowitz: iterates the characteristic polynomial of leading principal
// minors through Toeplitz products. Only ring additions and multiplications
// are used, so the result is valid over quotient rings as well.
RingElem det_berkowitz(const RingMat& a) {
  if (!a.is_square()) fail(ErrKind::NotSquare, "determinant");
  const int n = a.rows();
  const RingCtx& ctx = a.ctx();
  if (ctx.is_symbolic() && n > 16)
    fail(ErrKind::InvalidArgument,
         "symbolic determinant limited to size 16; evaluate at points instead");
  if (n == 0) return RingElem::one(ctx);
  const RingElem one = RingElem::one(ctx);
  // Coefficients of det(x*I - M_r), descending powers; starts with r = 1.
  std::vector<RingElem> c{one, -a.at(0, 0)};
  for (int r = 2; r <= n; ++r) {
    // t[0] = 1, t[1] = -a_rr, t[k] = -(row * M^(k-2) * col) for k >= 2.
    std::vector<RingElem> t(r + 1, RingElem::zero(ctx));
    t[0] = one;
    t[1] = -a.at(r - 1, r - 1);
    std::vector<RingElem> v(r - 1, RingElem::zero(ctx));
    for (int j = 0; j < r - 1; ++j) v[j] = a.at(r - 1, j);
    for (int k = 2; k <= r; ++k) {
      RingElem dot = RingElem::zero(ctx);
      for (int j = 0; j < r - 1; ++j) dot += v[j] * a.at(j, r - 1);
      t[k] = -dot;
      if (k == r) break;
      std::vector<RingElem> w(r - 1, RingElem::zero(ctx));
      for (int j = 0; j < r - 1; ++j) {
        if (v[j].is_zero()) continue;
        for (int l = 0; l < r - 1; ++l) w[l] += v[j] * a.at(j, l);
      }
      v = std::move(w);
    }
    std::vector<RingElem> next(r + 1, RingElem::zero(ctx));
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j < r && j <= i; ++j)
        if (i - j <= r) next[i] += t[i - j] * c[j];
    c = std::move(next);
  }
  // det(M) = (-1)^n * p_n(0)
  return (n % 2 == 0) ? c[n] : -c[n];
}

RingElem det(const RingMat& a) {
  if (!a.is_square()) fail(ErrKind::NotSquare, "determinant");
  if (a.ctx().kind == RingKind::Rational)
    return RingElem::constant(a.ctx(), det_gauss(to_mpq(a)));
  return det_berkowitz(a);
}

namespace {

void require_alternating(const RingMat& a) {
  if (!a.is_square()) fail(ErrKind::NotSquare, "pfaffian");
  if (a.rows() % 2 != 0)
    fail(ErrKind::NotAlternating, "pfaffian needs even size");
  if (!is_alternating(a)) fail(ErrKind::NotAlternating, "pfaffian input");
}

// Expansion along the lowest remaining index, memoized on the index subset.
RingElem pf_expand(const RingMat& a, std::uint32_t alive,
                   std::map<std::uint32_t, RingElem>& memo) {
  if (alive == 0) return RingElem::one(a.ctx());
  auto it = memo.find(alive);
  if (it != memo.end()) return it->second;
  const int first = __builtin_ctz(alive);
  RingElem acc = RingElem::zero(a.ctx());
  std::uint32_t rest = alive & ~(1u << first);
  int pos = 0;  // position of j within the surviving indices after `first`
  for (std::uint32_t bits = rest; bits; bits &= bits - 1, ++pos) {
    const int j = __builtin_ctz(bits);
    const RingElem& aij = a.at(first, j);
    if (aij.is_zero()) continue;
    RingElem sub = pf_expand(a, rest & ~(1u << j), memo);
    // sign (-1)^pos: expansion Pf(A) = sum_j (-1)^j a_{1j} Pf(A_{1^ j^})
    acc += (pos % 2 == 0) ? aij * sub : -(aij * sub);
  }
  memo.emplace(alive, acc);
  return acc;
}

// Skew-symmetric elimination: repeatedly splits off the leading 2x2 block
// via a unimodular congruence, multiplying the pivots. Exact over Q.
mpq_class pf_eliminate(std::vector<std::vector<mpq_class>> m) {
  const int n = (int)m.size();
  mpq_class pf(1);
  for (int k = 0; k + 1 < n; k += 2) {
    int p = -1;
    for (int j = k + 1; j < n; ++j)
      if (m[k][j] != 0) {
        p = j;
        break;
      }
    if (p < 0) return mpq_class(0);
    if (p != k + 1) {
      for (int i = 0; i < n; ++i) std::swap(m[i][k + 1], m[i][p]);
      std::swap(m[k + 1], m[p]);
      pf = -pf;
    }
    const mpq_class pivot = m[k][k + 1];
    pf *= pivot;
    for (int i = k + 2; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        mpq_class upd = (m[k + 1][i] * m[k][j] - m[k][i] * m[k + 1][j]) / pivot;
        m[i][j] += upd;
        m[j][i] = -m[i][j];
      }
    }
  }
  return pf;
}

}  // namespace

RingElem pfaffian_expansion(const RingMat& a) {
  require_alternating(a);
  if (a.rows() > 16)
    fail(ErrKind::InvalidArgument, "expansion pfaffian limited to size 16");
  std::map<std::uint32_t, RingElem> memo;
  const std::uint32_t all = (1u << a.rows()) - 1;
  return pf_expand(a, all, memo);
}

RingElem pfaffian(const RingMat& a) {
  require_alternating(a);
  if (a.ctx().kind == RingKind::Rational)
    return RingElem::constant(a.ctx(), pf_eliminate(to_mpq(a)));
  return pfaffian_expansion(a);
}

bool is_symmetric(const RingMat& a) {
  if (!a.is_square()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (a.at(i, j) != a.at(j, i)) return false;
  return true;
}

bool is_alternating(const RingMat& a) {
  if (!a.is_square()) return false;
  for (int i = 0; i < a.rows(); ++i) {
    if (!a.at(i, i).is_zero()) return false;
    for (int j = i + 1; j < a.cols(); ++j)
      if (a.at(i, j) != -a.at(j, i)) return false;
  }
  return true;
}

bool is_orthogonal_wrt(const RingMat& a, const RingMat& form) {
  if (!a.is_square() || a.rows() != form.rows() || !form.is_square())
    fail(ErrKind::ShapeMismatch, "form size vs matrix size");
  return a.transpose() * form * a == form;
}

bool is_symplectic_wrt(const RingMat& a, const RingMat& form) {
  return is_alternating(form) && is_orthogonal_wrt(a, form);
}

bool classify_form(const RingMat& a, FormClass cls, const RingMat* form) {
  switch (cls) {
    case FormClass::Symmetric: return is_symmetric(a);
    case FormClass::Alternating: return is_alternating(a);
    case FormClass::OrthogonalWrt:
      if (!form) fail(ErrKind::InvalidArgument, "reference form required");
      return is_orthogonal_wrt(a, *form);
    case FormClass::SymplecticWrt:
      if (!form) fail(ErrKind::InvalidArgument, "reference form required");
      return is_symplectic_wrt(a, *form);
  }
  return false;
}

RingMat inverse_rational(const RingMat& a) {
  if (!a.is_square()) fail(ErrKind::NotSquare, "inverse");
  if (a.ctx().kind != RingKind::Rational)
    fail(ErrKind::CtxMismatch, "exact inverse only over the rational context");
  const int n = a.rows();
  auto m = to_mpq(a);
  std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (m[i][k] != 0) {
        p = i;
        break;
      }
    if (p < 0) fail(ErrKind::Singular, "matrix is not invertible");
    std::swap(m[p], m[k]);
    std::swap(inv[p], inv[k]);
    mpq_class d = m[k][k];
    for (int j = 0; j < n; ++j) {
      m[k][j] /= d;
      inv[k][j] /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0) continue;
      mpq_class f = m[i][k];
      for (int j = 0; j < n; ++j) {
        m[i][j] -= f * m[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  RingMat r(a.ctx(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.at(i, j) = RingElem::constant(a.ctx(), inv[i][j]);
  return r;
}

RingMat adjugate(const RingMat& a) {
  if (!a.is_square()) fail(ErrKind::NotSquare, "adjugate");
  const int n = a.rows();
  RingMat adj(a.ctx(), n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      RingMat minor(a.ctx(), n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;  // adj[i][j] = (-1)^{i+j} det(A with row j, col i removed)
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(rr, cc) = a.at(r, c);
          ++cc;
        }
        ++rr;
      }
      RingElem v = det_berkowitz(minor);
      adj.at(i, j) = ((i + j) % 2 == 0) ? v : -v;
    }
  }
  return adj;
}

RingMat lift_to_ctx(const RingMat& a, const RingCtx& target) {
  RingMat r(target, a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      r.at(i, j) = RingElem::constant(target, a.at(i, j).as_rational());
  return r;
}

std::vector<std::vector<mpq_class>> rational_nullspace(
    std::vector<std::vector<mpq_class>> rows, int cols) {
  // Row reduce, record pivot columns, then back-substitute one basis vector
  // per free column.
  int rank = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < cols && rank < (int)rows.size(); ++c) {
    int p = -1;
    for (int r = rank; r < (int)rows.size(); ++r)
      if (rows[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[rank]);
    mpq_class d = rows[rank][c];
    for (int j = c; j < cols; ++j) rows[rank][j] /= d;
    for (int r = 0; r < (int)rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      mpq_class f = rows[r][c];
      for (int j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<mpq_class>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> z(cols, 0);
    z[f] = 1;
    for (int r = 0; r < rank; ++r) z[pivot_col[r]] = -rows[r][f];
    basis.push_back(std::move(z));
  }
  return basis;
}

}  // namespace qspin
