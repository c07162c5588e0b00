#include "mrnmf/errors.hpp"
#include "mrnmf/matrix.hpp"
#include "mrnmf/matrix_io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace mrnmf {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("mrnmf_matrix_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

NonNegMatrix parse_csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

NonNegMatrix parse_mm(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in);
}

TEST(NonNegMatrix, RejectsNegativeEntry) {
  Matrix m(2, 2);
  m << 1, 2, 3, -4;
  EXPECT_THROW(NonNegMatrix{m}, DomainError);
}

TEST(NonNegMatrix, RejectsNonFiniteEntries) {
  Matrix m = Matrix::Ones(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(NonNegMatrix{m}, DomainError);
  m(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(NonNegMatrix{m}, DomainError);
}

TEST(NonNegMatrix, RejectsEmpty) { EXPECT_THROW(NonNegMatrix{Matrix(0, 3)}, DomainError); }

TEST(Frobenius, ExactProductGivesZero) {
  const Matrix h = oracle::random_matrix(4, 2, 1);
  const Matrix w = oracle::random_matrix(2, 5, 2);
  EXPECT_EQ(reconstruction_error(h * w, h, w), 0.0);
}

TEST(Frobenius, OneByOneHandValue) {
  EXPECT_EQ(reconstruction_error(Matrix::Ones(1, 1), Matrix::Zero(1, 1), Matrix::Zero(1, 1)), 1.0);
}

TEST(Frobenius, MatchesElementwiseLoop) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix x = oracle::random_matrix(3, 3, 10 + seed);
    const Matrix h = oracle::random_matrix(3, 3, 20 + seed);
    const Matrix w = oracle::random_matrix(3, 3, 30 + seed);
    EXPECT_NEAR(reconstruction_error(x, h, w), oracle::reconstruction(x, h, w), 1e-12);
  }
}

TEST(Frobenius, SymmetricAndZeroOnlyForEqualArguments) {
  const Matrix a = oracle::random_matrix(4, 3, 5);
  const Matrix b = oracle::random_matrix(4, 3, 6);
  EXPECT_EQ(frobenius_sq_diff(a, b), frobenius_sq_diff(b, a));
  EXPECT_GT(frobenius_sq_diff(a, b), 0.0);
  EXPECT_EQ(frobenius_sq_diff(a, a), 0.0);
}

TEST(Frobenius, DimensionMismatchThrows) {
  EXPECT_THROW(frobenius_sq_diff(Matrix::Ones(2, 2), Matrix::Ones(2, 3)), DimensionError);
  EXPECT_THROW(reconstruction_error(Matrix::Ones(2, 2), Matrix::Ones(2, 1), Matrix::Ones(2, 2)),
               DimensionError);
}

TEST(MultiplicativeHelpers, PreserveNonnegativity) {
  const Matrix a = oracle::random_matrix(5, 4, 7);
  Matrix b = oracle::random_matrix(5, 4, 8);
  b(0, 0) = 0.0;
  EXPECT_TRUE((hadamard(a, b).array() >= 0.0).all());
  const Matrix q = floored_quotient(a, b);
  EXPECT_TRUE((q.array() >= 0.0).all());
  EXPECT_TRUE(q.allFinite());
  Matrix p = oracle::random_matrix(5, 4, 9);
  multiplicative_update(p, a, b);
  EXPECT_TRUE((p.array() >= 0.0).all());
  EXPECT_TRUE(p.allFinite());
}

TEST(MultiplicativeHelpers, FloorAppliesToDenominator) {
  const Matrix num = Matrix::Constant(1, 1, 2.0);
  const Matrix den = Matrix::Constant(1, 1, 3.0);
  EXPECT_EQ(floored_quotient(num, den)(0, 0), 2.0 / (3.0 + kDenominatorFloor));
}

TEST(Csv, ParsesRowsAsFeatures) {
  const NonNegMatrix m = parse_csv("1,2\n3,4\n");
  ASSERT_EQ(m.rows(), 2u);
  ASSERT_EQ(m.cols(), 2u);
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(0, 1), 2.0);
  EXPECT_EQ(m(1, 0), 3.0);
  EXPECT_EQ(m(1, 1), 4.0);
}

TEST(Csv, AcceptsScientificNotationAndWhitespace) {
  const NonNegMatrix m = parse_csv(" 1e-3 , 2.5E2\r\n0,  7\n");
  EXPECT_EQ(m(0, 0), 1e-3);
  EXPECT_EQ(m(0, 1), 250.0);
  EXPECT_EQ(m(1, 1), 7.0);
}

TEST(Csv, NegativeEntryNamesTheCell) {
  try {
    parse_csv("1,-2\n3,4");
    FAIL() << "expected a domain error";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1, col 2"), std::string::npos) << e.what();
  }
}

TEST(Csv, ParseFailureCarriesLineNumber) {
  try {
    parse_csv("1,2\n3,x\n");
    FAIL() << "expected a format error";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Csv, RaggedRowsAreFormatErrors) {
  try {
    parse_csv("1,2\n3\n");
    FAIL() << "expected a format error";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Csv, EmptyInputIsDomainError) { EXPECT_THROW(parse_csv(""), DomainError); }

TEST(MatrixMarket, DenseArrayIsColumnMajor) {
  const NonNegMatrix m = parse_mm(
      "%%MatrixMarket matrix array real general\n% comment\n2 2\n1\n3\n2\n4\n");
  EXPECT_EQ(m, parse_csv("1,2\n3,4"));
}

TEST(MatrixMarket, CoordinateDensifies) {
  const NonNegMatrix m = parse_mm(
      "%%MatrixMarket matrix coordinate real general\n3 2 2\n1 1 5\n3 2 0.5\n");
  ASSERT_EQ(m.rows(), 3u);
  ASSERT_EQ(m.cols(), 2u);
  EXPECT_EQ(m(0, 0), 5.0);
  EXPECT_EQ(m(2, 1), 0.5);
  EXPECT_EQ(m(1, 0), 0.0);
  EXPECT_EQ(m(0, 1), 0.0);
}

TEST(MatrixMarket, BadBannerAndCountsAreFormatErrors) {
  EXPECT_THROW(parse_mm("2 2\n1\n2\n3\n4\n"), FormatError);
  EXPECT_THROW(parse_mm("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n"), FormatError);
  EXPECT_THROW(parse_mm("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"),
               FormatError);
}

TEST(MatrixMarket, NegativeValueIsDomainError) {
  EXPECT_THROW(parse_mm("%%MatrixMarket matrix array real general\n1 2\n1\n-1\n"), DomainError);
}

TEST(MatrixFiles, ZeroMatrixRoundTrips) {
  TempDir dir;
  const NonNegMatrix zero = NonNegMatrix::zeros(1, 1);
  save_matrix(zero, dir.path() / "z.csv", MatrixFormat::csv);
  std::ifstream in(dir.path() / "z.csv");
  std::string text;
  std::getline(in, text);
  EXPECT_EQ(text, "0");
  EXPECT_EQ(load_matrix(dir.path() / "z.csv", MatrixFormat::csv), zero);
}

TEST(MatrixFiles, RandomMatricesRoundTripExactly) {
  TempDir dir;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NonNegMatrix m(oracle::random_matrix(5, 4, seed, 0.0, 1e3));
    for (MatrixFormat format : {MatrixFormat::csv, MatrixFormat::matrix_market}) {
      const fs::path file = dir.path() / (format == MatrixFormat::csv ? "m.csv" : "m.mtx");
      save_matrix(m, file, format);
      const NonNegMatrix back = load_matrix(file, format);
      EXPECT_EQ(back, m);
    }
  }
}

TEST(MatrixFiles, CsvAndMatrixMarketAgree) {
  TempDir dir;
  const NonNegMatrix m = parse_csv("1,2\n3,4");
  save_matrix(m, dir.path() / "m.mtx", MatrixFormat::matrix_market);
  EXPECT_EQ(load_matrix(dir.path() / "m.mtx", MatrixFormat::matrix_market), m);
}

TEST(MatrixFiles, UnwritablePathIsIoError) {
  TempDir dir;
  EXPECT_THROW(save_matrix(NonNegMatrix::zeros(1, 1), dir.path() / "missing" / "x.csv",
                           MatrixFormat::csv),
               IoError);
}

TEST(MatrixFiles, MissingFileIsIoError) {
  EXPECT_THROW(load_matrix("/nonexistent/mrnmf/x.csv", MatrixFormat::csv), IoError);
}

TEST(MatrixFiles, FormatNames) {
  EXPECT_EQ(parse_matrix_format("csv"), MatrixFormat::csv);
  EXPECT_EQ(parse_matrix_format("matrix_market"), MatrixFormat::matrix_market);
  EXPECT_EQ(format_from_extension("a/b.mtx"), MatrixFormat::matrix_market);
  EXPECT_EQ(format_from_extension("a/b.csv"), MatrixFormat::csv);
  EXPECT_THROW(parse_matrix_format("xlsx"), ParameterError);
}

}  // namespace
}  // namespace mrnmf
