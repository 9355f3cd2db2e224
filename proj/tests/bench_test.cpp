#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "randproj/bench/dataset.hpp"
#include "randproj/bench/experiments.hpp"
#include "randproj/bench/io.hpp"
#include "randproj/bench/report.hpp"
#include "randproj/error.hpp"
#include "randproj/linalg/decompositions.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace randproj::bench;
using randproj::DataError;

namespace {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() /
                (std::string("randproj_") + info->test_suite_name() + "_" + info->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string str() const { return path_.string(); }

private:
    fs::path path_;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PgmImage constant_image(std::size_t w, std::size_t h, std::uint8_t value) {
    return PgmImage{w, h, 255, std::vector<std::uint8_t>(w * h, value)};
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

// ---- CSV ----

TEST(MatrixCsv, ParsesSimpleFile) {
    TempDir dir;
    write_text(dir.file("a.csv"), "1.0,2.0\n3.0,4.0\n");
    const Matrix m = load_matrix_csv(dir.file("a.csv"));
    EXPECT_EQ(randproj::testing::max_abs_diff(m, Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}})), 0.0);
}

TEST(MatrixCsv, HeaderSpacesAndCrlf) {
    TempDir dir;
    write_text(dir.file("a.csv"), "x,y\r\n 1.5 , -2e3\r\n0,7\r\n");
    const Matrix m = load_matrix_csv(dir.file("a.csv"), true);
    ASSERT_EQ(m.rows(), 2u);
    EXPECT_EQ(m(0, 1), -2000.0);
    EXPECT_EQ(m(1, 1), 7.0);
}

TEST(MatrixCsv, EmptyFileIsDataError) {
    TempDir dir;
    write_text(dir.file("e.csv"), "");
    EXPECT_THROW(load_matrix_csv(dir.file("e.csv")), DataError);
    EXPECT_THROW(load_matrix_csv(dir.file("missing.csv")), DataError);
}

TEST(MatrixCsv, BadCellReportsLineAndColumn) {
    TempDir dir;
    write_text(dir.file("b.csv"), "1,2,3\n4,five,6\n");
    const std::string msg = error_of([&] { load_matrix_csv(dir.file("b.csv")); });
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column 2"), std::string::npos) << msg;
    write_text(dir.file("n.csv"), "1,nan\n");
    EXPECT_THROW(load_matrix_csv(dir.file("n.csv")), DataError);
}

TEST(MatrixCsv, RaggedRowsRejected) {
    TempDir dir;
    write_text(dir.file("r.csv"), "1,2\n3\n");
    EXPECT_THROW(load_matrix_csv(dir.file("r.csv")), DataError);
}

TEST(MatrixCsv, SaveLoadRoundTripIsExact) {
    TempDir dir;
    const Matrix m = randproj::linalg::gaussian_matrix(7, 3, randproj::linalg::Seed{1}) * 1e-7;
    save_matrix_csv(m, dir.file("m.csv"));
    EXPECT_EQ(randproj::testing::max_abs_diff(load_matrix_csv(dir.file("m.csv")), m), 0.0);
}

// ---- PGM ----

TEST(Pgm, DirectoryBecomesPixelColumns) {
    TempDir dir;
    PgmImage a = constant_image(4, 4, 0);
    a.pixels[5] = 255;
    write_pgm(dir.file("a.pgm"), a);
    write_pgm(dir.file("b.pgm"), constant_image(4, 4, 255));
    write_text(dir.file("notes.txt"), "ignored");
    const Matrix m = load_pgm_dir(dir.str());
    ASSERT_EQ(m.rows(), 16u);
    ASSERT_EQ(m.cols(), 2u);
    EXPECT_EQ(m(5, 0), 1.0);
    EXPECT_EQ(m(4, 0), 0.0);
    for (std::size_t p = 0; p < 16; ++p) EXPECT_EQ(m(p, 1), 1.0);
}

TEST(Pgm, ReadWriteRoundTripWithComment) {
    TempDir dir;
    std::string bytes = "P5\n# a comment\n3 2\n200\n";
    bytes += std::string("\x01\x02\x03\x04\x05\xc8", 6);
    write_text(dir.file("c.pgm"), bytes);
    const PgmImage img = read_pgm(dir.file("c.pgm"));
    EXPECT_EQ(img.width, 3u);
    EXPECT_EQ(img.height, 2u);
    EXPECT_EQ(img.max_value, 200u);
    EXPECT_EQ(img.pixels.back(), 200);
}

TEST(Pgm, CorruptHeaderNamesFile) {
    TempDir dir;
    write_pgm(dir.file("good.pgm"), constant_image(2, 2, 9));
    write_text(dir.file("zbad.pgm"), "P5\n2 x\n255\n....");
    const std::string msg = error_of([&] { load_pgm_dir(dir.str()); });
    EXPECT_NE(msg.find("zbad.pgm"), std::string::npos) << msg;
    EXPECT_THROW(load_pgm_dir(dir.str()), DataError);
}

TEST(Pgm, RejectsOtherFormatsAndTruncation) {
    TempDir dir;
    write_text(dir.file("p2.pgm"), "P2\n1 1\n255\n7\n");
    EXPECT_THROW(read_pgm(dir.file("p2.pgm")), DataError);
    write_text(dir.file("short.pgm"), "P5\n4 4\n255\nabc");
    EXPECT_THROW(read_pgm(dir.file("short.pgm")), DataError);
}

TEST(Pgm, MixedDimensionsRejected) {
    TempDir dir;
    write_pgm(dir.file("a.pgm"), constant_image(4, 4, 1));
    write_pgm(dir.file("b.pgm"), constant_image(4, 3, 1));
    const std::string msg = error_of([&] { load_pgm_dir(dir.str()); });
    EXPECT_NE(msg.find("b.pgm"), std::string::npos) << msg;
}

TEST(Pgm, EmptyOrMissingDirectory) {
    TempDir dir;
    EXPECT_THROW(load_pgm_dir(dir.str()), DataError);
    EXPECT_THROW(load_pgm_dir(dir.file("nope")), DataError);
}

// ---- Datasets ----

TEST(Datasets, NoiselessCircleHasExactRadius) {
    auto spec = DatasetSpec::circle_cloud(50, 0.0);
    spec.radius = 2.5;
    const auto d = generate_dataset(spec, Seed{1});
    ASSERT_EQ(d.x.rows(), 100u);
    for (std::size_t i = 0; i < 50; ++i) {
        EXPECT_NEAR(std::hypot(d.x(i, 0), d.x(i, 1)), 2.5, 1e-12);
        EXPECT_EQ((*d.labels)[i], 0);
        EXPECT_EQ((*d.labels)[50 + i], 1);
    }
}

TEST(Datasets, NoiselessLowRankHasGeometricSpectrum) {
    auto spec = DatasetSpec::low_rank_plus_noise(30, 20, 3, 0.0);
    spec.decay = 0.5;
    const auto d = generate_dataset(spec, Seed{2});
    const auto s = randproj::linalg::svd(d.x).s;
    EXPECT_NEAR(s[0], 1.0, 1e-12);
    EXPECT_NEAR(s[1], 0.5, 1e-12);
    EXPECT_NEAR(s[2], 0.25, 1e-12);
    EXPECT_LT(s[3], 1e-12);
    EXPECT_FALSE(d.labels.has_value());
}

TEST(Datasets, BlobsCycleThroughClasses) {
    const auto d = generate_dataset(DatasetSpec::digit_blobs(5, 8), Seed{3});
    ASSERT_EQ(d.x.rows(), 50u);
    EXPECT_EQ(d.x.cols(), 8u);
    for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ((*d.labels)[i], static_cast<int>(i % 10));
}

TEST(Datasets, SameSeedSameData) {
    for (const auto& spec : {DatasetSpec::circle_cloud(20, 0.1), DatasetSpec::digit_blobs(3, 5),
                             DatasetSpec::low_rank_plus_noise(10, 8, 2, 0.01)}) {
        const auto a = generate_dataset(spec, Seed{4});
        const auto b = generate_dataset(spec, Seed{4});
        const auto c = generate_dataset(spec, Seed{5});
        EXPECT_EQ(a.x.data().size(), b.x.data().size());
        EXPECT_TRUE(std::equal(a.x.data().begin(), a.x.data().end(), b.x.data().begin()));
        EXPECT_GT(randproj::testing::max_abs_diff(a.x, c.x), 0.0);
    }
}

TEST(Datasets, CsvWithLabelColumn) {
    TempDir dir;
    write_text(dir.file("d.csv"), "0.5,1.5,0\n2.5,3.5,2\n");
    DatasetSpec spec;
    spec.kind = DatasetKind::csv_file;
    spec.path = dir.file("d.csv");
    spec.label_column = true;
    const auto d = generate_dataset(spec, Seed{0});
    EXPECT_EQ(d.x.cols(), 2u);
    EXPECT_EQ(*d.labels, (std::vector<int>{0, 2}));
    write_text(dir.file("bad.csv"), "0.5,1.5,0.5\n");
    spec.path = dir.file("bad.csv");
    EXPECT_THROW(generate_dataset(spec, Seed{0}), DataError);
}

TEST(Datasets, KindNamesRoundTrip) {
    for (auto k : {DatasetKind::circle_cloud, DatasetKind::gaussian_blobs, DatasetKind::low_rank_plus_noise,
                   DatasetKind::csv_file, DatasetKind::pgm_dir})
        EXPECT_EQ(dataset_kind_from_string(to_string(k)), k);
    EXPECT_THROW(dataset_kind_from_string("spiral"), std::invalid_argument);
}

// ---- Reports ----

namespace {

ExperimentReport sample_report() {
    ExperimentReport r;
    r.experiment_name = "demo";
    r.parameters = {{"rank", "5,10"}, {"seed", "7"}};
    r.sweep_name = "k";
    r.metric_names = {"err", "seconds"};
    r.seed = Seed{7};
    r.timestamp = "2026-01-02T03:04:05Z";
    r.add_row(5, {0.1, 1e-300});
    r.add_row(10, {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity()});
    r.add_row(20, {-std::numeric_limits<double>::infinity(), 1.0 / 3.0});
    return r;
}

}  // namespace

TEST(Report, CsvRoundTrip) {
    const auto r = sample_report();
    const std::string text = format_report(r, ReportFormat::csv);
    EXPECT_EQ(text.rfind("# experiment: demo\n", 0), 0u);
    EXPECT_NE(text.find("\nk,err,seconds\n"), std::string::npos);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_TRUE(same_report(parse_report(text, ReportFormat::csv), r));
}

TEST(Report, JsonRoundTrip) {
    const auto r = sample_report();
    EXPECT_TRUE(same_report(parse_report(format_report(r, ReportFormat::json), ReportFormat::json), r));
    TempDir dir;
    save_report(r, dir.file("r.json"), ReportFormat::json);
    EXPECT_TRUE(same_report(load_report(dir.file("r.json"), ReportFormat::json), r));
}

TEST(Report, RowWidthAndMetricLookup) {
    auto r = sample_report();
    EXPECT_THROW(r.add_row(1, {1.0}), std::invalid_argument);
    EXPECT_EQ(r.metric(0, "err"), 0.1);
    EXPECT_THROW(r.metric(0, "missing"), std::out_of_range);
    EXPECT_EQ(r.columns(), (std::vector<std::string>{"k", "err", "seconds"}));
}

TEST(Report, MalformedInputRejected) {
    EXPECT_THROW(parse_report("{not json", ReportFormat::json), std::exception);
    EXPECT_THROW(parse_report("# experiment: x\nk,a\n1,2,3\n", ReportFormat::csv), std::exception);
    EXPECT_THROW(report_format_from_string("xml"), std::invalid_argument);
}

// ---- Experiments ----

namespace {

const ExperimentConfig& quick_config(const std::string& name) {
    static const std::map<std::string, ExperimentConfig> configs{
        {"jl", {{"trials", "300"}, {"dimension", "200"}, {"rank", "5,20"}}},
        {"factor-bench", {{"rank", "3,8"}, {"rows", "60"}, {"cols", "40"}}},
        {"eigenfaces", {{"rank", "1,5"}}},
        {"kpca", {{"n", "20"}, {"features", "0,50"}}},
        {"svm-grid", {{"n", "6"}, {"dimension", "8"}, {"classes", "3"}, {"gamma_count", "3"}, {"features", "30"}}},
        {"ls-bench", {{"dimension", "2,5"}, {"rows", "30"}, {"candidates", "50"}}},
    };
    return configs.at(name);
}

std::string header_line(const ExperimentReport& r) {
    std::string out;
    for (const auto& c : r.columns()) out += (out.empty() ? "" : ",") + c;
    return out;
}

}  // namespace

TEST(Experiments, ColumnsMatchGoldenFiles) {
    for (const auto& name : experiment_names()) {
        SCOPED_TRACE(name);
        std::string golden = read_text(std::string(RANDPROJ_GOLDEN_DIR) + "/" + name + ".columns");
        while (!golden.empty() && (golden.back() == '\n' || golden.back() == '\r')) golden.pop_back();
        const auto r = run_experiment(name, quick_config(name));
        EXPECT_EQ(header_line(r), golden);
        EXPECT_FALSE(r.rows.empty());
        EXPECT_EQ(r.experiment_name, name);
    }
}

TEST(Experiments, SameSeedReproducesEveryNonTimingValue) {
    for (const auto& name : experiment_names()) {
        SCOPED_TRACE(name);
        const auto a = run_experiment(name, quick_config(name));
        const auto b = run_experiment(name, quick_config(name));
        ASSERT_EQ(a.rows.size(), b.rows.size());
        EXPECT_EQ(a.parameters, b.parameters);
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            EXPECT_EQ(a.rows[i].sweep_value, b.rows[i].sweep_value);
            for (std::size_t j = 0; j < a.metric_names.size(); ++j) {
                if (a.metric_names[j].find("seconds") != std::string::npos) continue;
                EXPECT_EQ(a.rows[i].metrics[j], b.rows[i].metrics[j]) << a.metric_names[j];
            }
        }
    }
}

TEST(Experiments, ParametersRecordDefaults) {
    const auto r = run_experiment("ls-bench", {{"dimension", "3"}, {"rows", "10"}, {"candidates", "4"}});
    EXPECT_EQ(r.parameters.at("seed"), "42");
    EXPECT_EQ(r.parameters.at("candidates"), "4");
    EXPECT_EQ(r.seed, Seed{42});
}

TEST(Experiments, UnknownNameOrKeys) {
    EXPECT_THROW(run_experiment("nope", {}), std::invalid_argument);
    EXPECT_THROW(experiment_keys("nope"), std::invalid_argument);
    const std::string msg = error_of([] { run_experiment("jl", {{"alpha", "1"}, {"beta", "2"}}); });
    EXPECT_NE(msg.find("alpha"), std::string::npos);
    EXPECT_NE(msg.find("beta"), std::string::npos);
    EXPECT_NE(msg.find("trials"), std::string::npos);  // accepted keys are listed
    EXPECT_THROW(run_experiment("ls-bench", {{"rows", "ten"}}), std::invalid_argument);
}

TEST(Experiments, JlMeanNearZero) {
    const auto r = run_experiment("jl", {{"dimension", "1000"}, {"rank", "10"}, {"trials", "10000"}});
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_LT(std::abs(r.metric(0, "mean")), 0.01);
}

TEST(Experiments, RandomizedIdNeverBeatsPivotedQr) {
    const auto r = run_experiment("factor-bench", {{"rank", "5,10,20"}});
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_GE(r.metric(i, "rsvd_error"), r.metric(i, "svd_error") * (1.0 - 1e-12));
        EXPECT_GE(r.metric(i, "rid_relative"), -0.5);
    }
}

TEST(Experiments, RandomSearchNeverBeatsQr) {
    const auto r = run_experiment("ls-bench", {});
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_GE(r.metric(i, "residual_random"), r.metric(i, "residual_qr") - 1e-12);
        EXPECT_LT(r.metric(i, "normal_residual"), 1e-8);
    }
}

TEST(Experiments, MissingFaceDirectoryIsDataError) {
    TempDir dir;
    EXPECT_THROW(run_experiment("eigenfaces", {{"data", dir.file("absent")}}), DataError);
}

// ---- Command line ----

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + RANDPROJ_BENCH_EXE + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
    TempDir dir;
    EXPECT_EQ(run_cli("ls-bench --param dimension=2 --param rows=10 --param candidates=5 --out " +
                      dir.file("ok.csv")),
              0);
    EXPECT_EQ(run_cli("no-such-experiment"), 1);
    EXPECT_EQ(run_cli("jl --param bogus=1"), 1);
    EXPECT_EQ(run_cli("kpca --mode sideways"), 1);
    EXPECT_EQ(run_cli("kpca --gamma 1 --gamma-range 1 2"), 1);
    EXPECT_EQ(run_cli("eigenfaces --data " + dir.file("absent")), 2);
    EXPECT_EQ(run_cli("svm-grid --param n=10 --param dimension=2 --param classes=2 --gamma 1 "
                      "--param box=1000 --param max_iterations=1"),
              3);
}

TEST(Cli, WritesLoadableReports) {
    TempDir dir;
    const std::string base = "ls-bench --param dimension=2,3 --param rows=10 --param candidates=5 --seed 9 ";
    ASSERT_EQ(run_cli(base + "--out " + dir.file("r.csv")), 0);
    ASSERT_EQ(run_cli(base + "--format json --out " + dir.file("r.json")), 0);
    const auto csv = load_report(dir.file("r.csv"), ReportFormat::csv);
    const auto json = load_report(dir.file("r.json"), ReportFormat::json);
    EXPECT_EQ(csv.rows.size(), 2u);
    EXPECT_EQ(csv.seed, Seed{9});
    EXPECT_EQ(json.parameters, csv.parameters);
    EXPECT_EQ(json.rows[1].metrics[0], csv.rows[1].metrics[0]);
}
