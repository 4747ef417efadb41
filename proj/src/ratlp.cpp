#include "fc/ratlp.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace fc {

void LinearProgram::validate() const {
  if (num_vars < 0) throw LpError("negative variable count");
  auto check = [&](const std::vector<LinearRow>& rows, const char* what) {
    for (const auto& row : rows) {
      if (static_cast<int>(row.coefficients.size()) != num_vars) {
        throw LpError(std::string(what) + " row has " + std::to_string(row.coefficients.size()) +
                      " coefficients, expected " + std::to_string(num_vars));
      }
    }
  };
  check(equalities, "equality");
  check(inequalities, "inequality");
  if (!nonnegative.empty() && static_cast<int>(nonnegative.size()) != num_vars) {
    throw LpError("nonnegativity flags do not match variable count");
  }
  if (sense != Sense::none && static_cast<int>(objective.size()) != num_vars) {
    throw LpError("objective length does not match variable count");
  }
}

namespace {

// Simplex dictionary: basic_r = beta_r + sum_c alpha[r][c] * nonbasic_c,
// objective = z0 + sum_c d[c] * nonbasic_c (maximized). Variable ids: the
// structural columns first, then the auxiliary variable, then row slacks.
class Dictionary {
 public:
  Dictionary(int structural, std::vector<std::vector<Rational>> g, std::vector<Rational> h)
      : rows_(static_cast<int>(g.size())), structural_(structural), aux_id_(structural) {
    alpha_.resize(rows_);
    beta_.resize(rows_);
    row_var_.resize(rows_);
    for (int r = 0; r < rows_; ++r) {
      alpha_[r] = std::move(g[r]);
      alpha_[r].emplace_back(1);  // auxiliary column
      beta_[r] = -h[r];
      row_var_[r] = structural_ + 1 + r;
    }
    for (int c = 0; c <= structural_; ++c) col_var_.push_back(c);
  }

  /// Phase one. Returns dual multipliers proving infeasibility, if any.
  std::optional<std::vector<Rational>> make_feasible() {
    int worst = -1;
    for (int r = 0; r < rows_; ++r) {
      if (beta_[r] < 0 && (worst < 0 || beta_[r] < beta_[worst])) worst = r;
    }
    const int aux_col = column_of(aux_id_);
    if (worst >= 0) {
      d_.assign(cols(), Rational(0));
      d_[aux_col] = -1;
      z0_ = 0;
      pivot(worst, aux_col);
      run();
      if (z0_ < 0) {
        std::vector<Rational> duals(rows_);
        for (int c = 0; c < cols(); ++c) {
          const int v = col_var_[c];
          if (v > structural_) duals[v - structural_ - 1] = -d_[c];
        }
        return duals;
      }
    }
    // Drive the auxiliary variable out of the basis and drop its column.
    for (int r = 0; r < rows_; ++r) {
      if (row_var_[r] != aux_id_) continue;
      const auto nz = std::find_if(alpha_[r].begin(), alpha_[r].end(),
                                   [](const Rational& a) { return a != 0; });
      if (nz != alpha_[r].end()) {
        pivot(r, static_cast<int>(nz - alpha_[r].begin()));
      } else {
        // aux == 0 identically: the row carries no constraint
        alpha_.erase(alpha_.begin() + r);
        beta_.erase(beta_.begin() + r);
        row_var_.erase(row_var_.begin() + r);
        --rows_;
      }
      break;
    }
    drop_column(column_of(aux_id_));
    return std::nullopt;
  }

  /// Maximize sum obj[j] * structural_j over the current feasible dictionary.
  /// Returns the entering column if the objective is unbounded.
  std::optional<int> maximize(const std::vector<Rational>& obj) {
    d_.assign(cols(), Rational(0));
    z0_ = 0;
    for (int c = 0; c < cols(); ++c) {
      if (col_var_[c] < structural_) d_[c] += obj[col_var_[c]];
    }
    for (int r = 0; r < rows_; ++r) {
      const int v = row_var_[r];
      if (v >= structural_ || obj[v] == 0) continue;
      z0_ += obj[v] * beta_[r];
      for (int c = 0; c < cols(); ++c) d_[c] += obj[v] * alpha_[r][c];
    }
    return run();
  }

  std::vector<Rational> structural_values() const {
    std::vector<Rational> x(structural_);
    for (int r = 0; r < rows_; ++r) {
      if (row_var_[r] < structural_) x[row_var_[r]] = beta_[r];
    }
    return x;
  }

  std::vector<Rational> ray(int col) const {
    std::vector<Rational> dir(structural_);
    if (col_var_[col] < structural_) dir[col_var_[col]] = 1;
    for (int r = 0; r < rows_; ++r) {
      if (row_var_[r] < structural_) dir[row_var_[r]] = alpha_[r][col];
    }
    return dir;
  }

  const Rational& objective_value() const { return z0_; }

 private:
  int cols() const { return static_cast<int>(col_var_.size()); }

  int column_of(int var) const {
    for (int c = 0; c < cols(); ++c) {
      if (col_var_[c] == var) return c;
    }
    return -1;
  }

  void drop_column(int col) {
    if (col < 0) return;
    for (auto& row : alpha_) row.erase(row.begin() + col);
    if (!d_.empty()) d_.erase(d_.begin() + col);
    col_var_.erase(col_var_.begin() + col);
  }

  /// Bland's rule iterations. Returns the unbounded entering column, if any.
  std::optional<int> run() {
    while (true) {
      int enter = -1;
      for (int c = 0; c < cols(); ++c) {
        if (d_[c] > 0 && (enter < 0 || col_var_[c] < col_var_[enter])) enter = c;
      }
      if (enter < 0) return std::nullopt;
      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < rows_; ++r) {
        if (alpha_[r][enter] >= 0) continue;
        Rational ratio = beta_[r] / -alpha_[r][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && row_var_[r] < row_var_[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) return enter;
      pivot(leave, enter);
    }
  }

  void pivot(int p, int q) {
    const Rational inv = 1 / alpha_[p][q];
    auto& prow = alpha_[p];
    // Solve row p for the entering variable.
    beta_[p] = -beta_[p] * inv;
    for (int c = 0; c < cols(); ++c) {
      if (c == q) continue;
      if (prow[c] != 0) prow[c] = -prow[c] * inv;
    }
    prow[q] = inv;
    std::swap(row_var_[p], col_var_[q]);

    auto substitute = [&](std::vector<Rational>& row, Rational& constant) {
      const Rational f = row[q];
      if (f == 0) return;
      constant += f * beta_[p];
      for (int c = 0; c < cols(); ++c) {
        if (c == q) continue;
        if (prow[c] != 0) row[c] += f * prow[c];
      }
      row[q] = f * prow[q];
    };
    for (int r = 0; r < rows_; ++r) {
      if (r != p) substitute(alpha_[r], beta_[r]);
    }
    if (!d_.empty()) substitute(d_, z0_);
  }

  int rows_;
  int structural_;
  int aux_id_;
  std::vector<std::vector<Rational>> alpha_;
  std::vector<Rational> beta_;
  std::vector<int> row_var_;
  std::vector<int> col_var_;
  std::vector<Rational> d_;
  Rational z0_;
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
  lp.validate();

  // Structural columns: one per nonnegative variable, two (x+, x-) per free one.
  std::vector<int> plus_col(lp.num_vars), minus_col(lp.num_vars, -1);
  int columns = 0;
  for (int j = 0; j < lp.num_vars; ++j) {
    plus_col[j] = columns++;
    if (!lp.is_nonnegative(j)) minus_col[j] = columns++;
  }
  auto expand = [&](const std::vector<Rational>& a, const Rational& sign) {
    std::vector<Rational> row(columns);
    for (int j = 0; j < lp.num_vars; ++j) {
      row[plus_col[j]] = sign * a[j];
      if (minus_col[j] >= 0) row[minus_col[j]] = -sign * a[j];
    }
    return row;
  };

  // All rows as G y >= h: inequalities, then each equality as a pair.
  std::vector<std::vector<Rational>> g;
  std::vector<Rational> h;
  for (const auto& row : lp.inequalities) {
    g.push_back(expand(row.coefficients, 1));
    h.push_back(row.rhs);
  }
  for (const auto& row : lp.equalities) {
    g.push_back(expand(row.coefficients, 1));
    h.push_back(row.rhs);
    g.push_back(expand(row.coefficients, -1));
    h.push_back(-row.rhs);
  }

  Dictionary dict(columns, g, h);

  if (auto duals = dict.make_feasible()) {
    FarkasCertificate cert;
    const std::size_t ni = lp.inequalities.size();
    cert.multipliers.assign(duals->begin(), duals->begin() + static_cast<long>(ni));
    for (std::size_t e = 0; e < lp.equalities.size(); ++e) {
      cert.lambda.push_back((*duals)[ni + 2 * e] - (*duals)[ni + 2 * e + 1]);
    }
    return LpInfeasible{std::move(cert)};
  }

  auto collapse = [&](const std::vector<Rational>& y) {
    std::vector<Rational> x(lp.num_vars);
    for (int j = 0; j < lp.num_vars; ++j) {
      x[j] = y[plus_col[j]];
      if (minus_col[j] >= 0) x[j] -= y[minus_col[j]];
    }
    return x;
  };

  if (lp.sense == Sense::none) return LpFeasible{collapse(dict.structural_values())};

  const Rational sign = lp.sense == Sense::maximize ? 1 : -1;
  const auto obj = expand(lp.objective, sign);
  if (auto col = dict.maximize(obj)) {
    return LpUnbounded{collapse(dict.structural_values()), collapse(dict.ray(*col))};
  }
  return LpOptimal{collapse(dict.structural_values()), sign * dict.objective_value()};
}

bool is_feasible_point(const LinearProgram& lp, const std::vector<Rational>& point) {
  if (static_cast<int>(point.size()) != lp.num_vars) return false;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.is_nonnegative(j) && point[j] < 0) return false;
  }
  auto dot = [&](const std::vector<Rational>& a) {
    Rational s;
    for (int j = 0; j < lp.num_vars; ++j) s += a[j] * point[j];
    return s;
  };
  for (const auto& row : lp.equalities) {
    if (dot(row.coefficients) != row.rhs) return false;
  }
  for (const auto& row : lp.inequalities) {
    if (dot(row.coefficients) < row.rhs) return false;
  }
  return true;
}

bool check_farkas(const LinearProgram& lp, const FarkasCertificate& cert) {
  if (cert.multipliers.size() != lp.inequalities.size() ||
      cert.lambda.size() != lp.equalities.size()) {
    return false;
  }
  std::vector<Rational> combination(lp.num_vars);
  Rational bound;
  for (std::size_t i = 0; i < lp.inequalities.size(); ++i) {
    const Rational& y = cert.multipliers[i];
    if (y < 0) return false;
    if (y == 0) continue;
    for (int j = 0; j < lp.num_vars; ++j) combination[j] += y * lp.inequalities[i].coefficients[j];
    bound += y * lp.inequalities[i].rhs;
  }
  for (std::size_t e = 0; e < lp.equalities.size(); ++e) {
    const Rational& l = cert.lambda[e];
    for (int j = 0; j < lp.num_vars; ++j) combination[j] += l * lp.equalities[e].coefficients[j];
    bound += l * lp.equalities[e].rhs;
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.is_nonnegative(j) ? combination[j] > 0 : combination[j] != 0) return false;
  }
  return bound > 0;
}

}  // namespace fc
