#include "fixtures.hpp"

#include "wordclust/corpus.hpp"
#include "wordclust/embedding.hpp"
#include "wordclust/kmeans.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace wordclust;

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

CommandResult run_cli(const std::string& args, const std::filesystem::path& dir) {
    const std::filesystem::path log = dir / "cli_output.txt";
    const std::string command =
        std::string(WORDCLUST_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = fixtures::read_text(log);
    return result;
}

/// Five 2-D blobs, 16 words each, written as a vector file.
std::filesystem::path write_blob_vectors(const std::filesystem::path& dir) {
    const auto vocab = fixtures::make_blob_vocabulary(5, 16);
    const auto path = dir / "vectors.txt";
    save_vectors(vocab.table, path);
    return path;
}

void write_sentiment_fixture(const std::filesystem::path& dir,
                             std::filesystem::path& train, std::filesystem::path& test) {
    const auto vocab = fixtures::make_blob_vocabulary(5, 16);
    const auto fix = fixtures::make_cluster_sentiment_corpus(
        vocab, {"VeryNegative", "Negative", "Neutral", "Positive", "VeryPositive"});
    train = dir / "train.tsv";
    test = dir / "test.tsv";
    write_sentiment_tsv(fix.train, train);
    write_sentiment_tsv(fix.test, test);
}

std::vector<std::vector<std::string>> parse_report_table(const std::string& content) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(content);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::stringstream fs(line);
        std::string field;
        while (std::getline(fs, field, '\t')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

} // namespace

TEST_CASE("cluster subcommand writes a lexicon and exits zero") {
    const auto dir = fixtures::temp_dir("cli_cluster");
    const auto vectors = write_blob_vectors(dir);
    const auto lexicon = dir / "lexicon.tsv";

    const auto result = run_cli(
        "cluster --vectors " + vectors.string() + " --k 2 --seed 3 --out " +
            lexicon.string(),
        dir);
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("inertia") != std::string::npos);

    const LexiconFile imported = import_lexicon(lexicon);
    CHECK(imported.k == 2);
    std::set<int> ids;
    for (const auto& [word, id] : imported.assignment) ids.insert(id);
    CHECK(ids == std::set<int>{0, 1});
}

TEST_CASE("cluster subcommand rejects k above the vocabulary size") {
    const auto dir = fixtures::temp_dir("cli_cluster_bad_k");
    const auto vectors = dir / "tiny.txt";
    fixtures::write_text(vectors, "a 0.0 0.0\nb 1.0 1.0\n");

    const auto result = run_cli(
        "cluster --vectors " + vectors.string() + " --k 99 --out " +
            (dir / "lex.tsv").string(),
        dir);
    CHECK(result.exit_code != 0);
    CHECK(result.output.find("exceeds vocabulary size") != std::string::npos);
}

TEST_CASE("cluster subcommand is byte-deterministic given the seed") {
    const auto dir = fixtures::temp_dir("cli_cluster_det");
    const auto vectors = write_blob_vectors(dir);
    const auto a = dir / "a.tsv";
    const auto b = dir / "b.tsv";
    const std::string base = "cluster --vectors " + vectors.string() + " --k 3 --seed 11";
    CHECK(run_cli(base + " --out " + a.string(), dir).exit_code == 0);
    CHECK(run_cli(base + " --out " + b.string(), dir).exit_code == 0);

    const std::string a_bytes = fixtures::read_text(a);
    CHECK(!a_bytes.empty());
    CHECK(a_bytes == fixtures::read_text(b));
}

TEST_CASE("run sweep produces one row per k plus the no-clusters baseline") {
    const auto dir = fixtures::temp_dir("cli_sweep");
    const auto vectors = write_blob_vectors(dir);
    std::filesystem::path train, test;
    write_sentiment_fixture(dir, train, test);
    const auto report = dir / "report.tsv";

    const auto result = run_cli(
        "run --task sent-class --vectors " + vectors.string() + " --train " +
            train.string() + " --test " + test.string() +
            " --k 2,3 --no-char-ngrams --l2 0.0001 --epochs 25 --out " + report.string(),
        dir);
    REQUIRE(result.exit_code == 0);

    const auto rows = parse_report_table(fixtures::read_text(report));
    REQUIRE(rows.size() == 4); // header + none + k=2 + k=3
    CHECK(rows[0] == std::vector<std::string>{"clusters", "mae_macro"});
    CHECK(rows[1][0] == "none");
    CHECK(rows[2][0] == "2");
    CHECK(rows[3][0] == "3");
    for (std::size_t r = 1; r < rows.size(); ++r) {
        REQUIRE(rows[r].size() == 2);
        CHECK_NOTHROW((void)std::stod(rows[r][1])); // metric column is numeric
    }
}

TEST_CASE("cluster-informative fixture beats the baseline through the CLI") {
    const auto dir = fixtures::temp_dir("cli_efficacy");
    const auto vectors = write_blob_vectors(dir);
    std::filesystem::path train, test;
    write_sentiment_fixture(dir, train, test);
    const auto report = dir / "report.tsv";

    const auto result = run_cli(
        "run --task sent-class --vectors " + vectors.string() + " --train " +
            train.string() + " --test " + test.string() +
            " --k 5 --no-char-ngrams --l2 0.0001 --epochs 30 --out " + report.string(),
        dir);
    REQUIRE(result.exit_code == 0);

    const auto rows = parse_report_table(fixtures::read_text(report));
    REQUIRE(rows.size() == 3);
    const double baseline = std::stod(rows[1][1]);
    const double clustered = std::stod(rows[2][1]);
    CHECK(clustered < baseline); // lower MAE^M is better
}

TEST_CASE("run accepts a key=value config file overridden by flags") {
    const auto dir = fixtures::temp_dir("cli_config");
    const auto vectors = write_blob_vectors(dir);
    std::filesystem::path train, test;
    write_sentiment_fixture(dir, train, test);
    const auto config = dir / "run.cfg";
    fixtures::write_text(config, "task=sent-class\nvectors=" + vectors.string() +
                                     "\ntrain=" + train.string() + "\ntest=" +
                                     test.string() + "\nk=2\nepochs=5\n" +
                                     "char-ngrams=false\nl2=0.0001\n");

    const auto report = dir / "report.tsv";
    const auto result = run_cli(
        "run --config " + config.string() + " --k 3 --out " + report.string(), dir);
    REQUIRE_MESSAGE(result.exit_code == 0, result.output);

    const std::string content = fixtures::read_text(report);
    CHECK(content.find("# k_sweep=3") != std::string::npos);  // flag wins
    CHECK(content.find("# epochs=5") != std::string::npos);   // config file value
    CHECK(content.find("# char_ngrams=0") != std::string::npos);
}

TEST_CASE("ner run reports precision, recall and f1 per row") {
    const auto dir = fixtures::temp_dir("cli_ner");
    const auto vocab = fixtures::make_blob_vocabulary(2, 12);
    const auto vectors = dir / "vectors.txt";
    save_vectors(vocab.table, vectors);

    const auto fix = fixtures::make_cluster_ner_corpus(vocab, 0, 1);
    const auto train = dir / "train.conll";
    const auto test = dir / "test.conll";
    write_conll(fix.train, train);
    write_conll(fix.test, test);

    const auto report = dir / "report.tsv";
    const auto result = run_cli(
        "run --task ner-seg --vectors " + vectors.string() + " --train " + train.string() +
            " --test " + test.string() +
            " --k 2 --no-ngrams --no-capitalization --l2 0.0001 --epochs 30 --out " +
            report.string(),
        dir);
    REQUIRE_MESSAGE(result.exit_code == 0, result.output);

    const auto rows = parse_report_table(fixtures::read_text(report));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"clusters", "precision", "recall", "f1"});
    const double baseline_f1 = std::stod(rows[1][3]);
    const double clustered_f1 = std::stod(rows[2][3]);
    CHECK(clustered_f1 > baseline_f1);
    CHECK(clustered_f1 == 1.0);
}

TEST_CASE("quantification run writes per-subject details on request") {
    const auto dir = fixtures::temp_dir("cli_quant");
    const auto vectors = write_blob_vectors(dir);
    std::filesystem::path train, test;
    write_sentiment_fixture(dir, train, test);
    const auto report = dir / "report.tsv";

    const auto result = run_cli(
        "run --task sent-quant --vectors " + vectors.string() + " --train " +
            train.string() + " --test " + test.string() +
            " --k 5 --no-char-ngrams --l2 0.0001 --epochs 30 --out " + report.string() +
            " --subjects-out " + (dir / "subjects").string(),
        dir);
    REQUIRE_MESSAGE(result.exit_code == 0, result.output);

    const auto rows = parse_report_table(fixtures::read_text(report));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"clusters", "mean_emd"});
    CHECK(std::stod(rows[2][1]) <= std::stod(rows[1][1]));

    // subject<TAB>p1..p5<TAB>emd rows for the clustered run.
    const auto subject_rows =
        parse_report_table(fixtures::read_text(dir / "subjects-5.tsv"));
    REQUIRE(!subject_rows.empty());
    for (const auto& row : subject_rows) CHECK(row.size() == 7);
}

TEST_CASE("run refuses missing inputs with a nonzero exit") {
    const auto dir = fixtures::temp_dir("cli_missing");
    const auto result = run_cli(
        "run --task sent-class --vectors nope.txt --train nope.tsv --test nope.tsv "
        "--out r.tsv",
        dir);
    CHECK(result.exit_code != 0);
}

TEST_CASE("full runs are byte-deterministic: lexicons, models, reports") {
    const auto dir = fixtures::temp_dir("cli_determinism");
    const auto vectors = write_blob_vectors(dir);
    std::filesystem::path train, test;
    write_sentiment_fixture(dir, train, test);

    auto one_pass = [&](const std::string& tag) {
        const auto lexicon = dir / ("lex_" + tag + ".tsv");
        REQUIRE(run_cli("cluster --vectors " + vectors.string() +
                            " --k 3 --seed 5 --out " + lexicon.string(),
                        dir)
                    .exit_code == 0);
        const auto report = dir / ("report_" + tag + ".tsv");
        const auto models = (dir / ("models_" + tag)).string();
        REQUIRE(run_cli("run --task sent-class --vectors " + vectors.string() +
                            " --train " + train.string() + " --test " + test.string() +
                            " --k 2 --no-char-ngrams --epochs 10 --out " + report.string() +
                            " --save-models " + models,
                        dir)
                    .exit_code == 0);
        return fixtures::read_text(lexicon) + "\x1e" + fixtures::read_text(report) +
               "\x1e" + fixtures::read_text(models + "-none.model.tsv") + "\x1e" +
               fixtures::read_text(models + "-2.model.tsv");
    };

    const std::string first = one_pass("a");
    const std::string second = one_pass("b");
    CHECK(!first.empty());
    CHECK(first == second);
}
