#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace conekit {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Dense row-major integer matrix. Keeps its column count even with zero rows.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);
  static IntMatrix from_cols(const std::vector<IntVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  IntVec col(std::size_t j) const;
  std::vector<IntVec> row_list() const;
  std::vector<IntVec> col_list() const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVec operator*(const IntVec& v) const;
  bool operator==(const IntMatrix& o) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Int& c);
  void add_col(std::size_t i, std::size_t j, const Int& c);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);
  void append_row(const IntVec& r);
  IntMatrix select_rows(std::size_t begin, std::size_t end) const;
  IntMatrix select_cols(std::size_t begin, std::size_t end) const;

  bool is_zero() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

// vector helpers
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const Int& c, const IntVec& a);
IntVec neg(const IntVec& a);
IntVec zeros(std::size_t n);
IntVec unit(std::size_t n, std::size_t i);
bool is_zero(const IntVec& a);
Int content(const IntVec& a);  // gcd of entries, 0 for the zero vector
IntVec primitive(const IntVec& a);  // divide by content, sign kept
RatVec to_rat(const IntVec& a);
// Clears denominators and divides by content; sign kept.
IntVec primitive(const RatVec& a);
IntVec concat(const IntVec& a, const IntVec& b);

Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
Int floor_of(const Rat& q);
Int ceil_of(const Rat& q);

std::string to_string(const Int& a);
std::string to_string(const Rat& a);
std::string to_string(const IntVec& v);
std::string to_string(const RatVec& v);

}  // namespace conekit
