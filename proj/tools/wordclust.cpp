// wordclust: cluster word-embedding files with restarted k-means++ and run
// the cluster-membership feature experiments (NER tagging, five-point
// sentiment classification, sentiment quantification) with per-k sweep
// reports.

#include "wordclust/corpus.hpp"
#include "wordclust/embedding.hpp"
#include "wordclust/hash.hpp"
#include "wordclust/kmeans.hpp"
#include "wordclust/numfmt.hpp"
#include "wordclust/quantify.hpp"
#include "wordclust/sentiment.hpp"
#include "wordclust/tagger.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string_view>

namespace wc = wordclust;

namespace {

struct ClusterArgs {
    std::string vectors;
    std::string out;
    int k = 0;
    std::uint64_t seed = 0;
    int restarts = 10;
    int max_iterations = 300;
    double tolerance = 0.0;
    bool normalize = false;
};

int run_cluster(const ClusterArgs& args) {
    wc::LoadStats stats;
    wc::EmbeddingTable table = wc::load_vectors(args.vectors, std::nullopt, &stats);
    if (stats.duplicates_skipped > 0) {
        std::cerr << "warning: skipped " << stats.duplicates_skipped
                  << " duplicate words (first occurrence wins)\n";
    }
    if (args.normalize) table = wc::l2_normalized(table);

    wc::ClusterConfig config;
    config.k = args.k;
    config.seed = args.seed;
    config.restarts = args.restarts;
    config.max_iterations = args.max_iterations;
    config.tolerance = args.tolerance;

    const wc::ClusterModel model = wc::fit_with_restarts(table, config);
    wc::export_lexicon(model, args.out);

    std::cout << "vocab\t" << table.size() << "\tdim\t" << table.dim() << '\n';
    std::cout << "k\t" << model.k() << "\tinertia\t" << wc::format_double(model.inertia())
              << '\n';
    for (std::size_t i = 0; i < model.restart_stats().size(); ++i) {
        const auto& stat = model.restart_stats()[i];
        std::cout << "restart\t" << i << "\tseed\t" << stat.seed << "\tinertia\t"
                  << wc::format_double(stat.inertia) << "\titerations\t" << stat.iterations
                  << '\n';
    }
    std::cout << "lexicon written to " << args.out << '\n';
    return 0;
}

struct RunArgs {
    std::string task;
    std::string vectors;
    std::string train_path;
    std::string test_path;
    std::string k_list = "100,250,500,1000,2000";
    std::string out;
    std::string save_models;  // path prefix; empty = don't save
    std::string subjects_out; // per-subject TSV prefix for sent-quant

    std::uint64_t cluster_seed = 0;
    int restarts = 10;
    int max_iterations = 300;
    double tolerance = 0.0;
    bool normalize = false;

    bool ngrams = true;
    int ngram_lo = 1;
    int ngram_hi = 3;
    bool char_ngrams = true;
    int char_lo = 3;
    int char_hi = 5;
    bool clusters = true;
    bool capitalization = true;
    std::vector<std::string> lexicon_paths;
    int word_window = 2;
    int cluster_window = 2;
    int pos_window = 1;
    bool probabilistic = false;

    double l2 = 1.0;
    int epochs = 50;
    double learning_rate = 0.1;
    double lr_decay = 0.01;
    std::uint64_t train_seed = 0;
    bool shuffle = true;
};

std::vector<int> parse_k_list(const std::string& list) {
    std::vector<int> ks;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        long long k = 0;
        if (!wc::parse_int(item, k) || k < 1) {
            throw std::runtime_error("bad k value '" + item + "' in sweep list");
        }
        ks.push_back(static_cast<int>(k));
    }
    if (ks.empty()) throw std::runtime_error("empty k sweep list");
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

struct RowResult {
    std::string name; // "none" or the k value
    std::vector<std::pair<std::string, double>> metrics;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// `# key=value` header block followed by a TSV table; the comment prefix
/// keeps the file parseable as plain TSV.
void write_report(const std::string& path, const KeyValues& header,
                  const std::vector<std::string>& columns,
                  const std::vector<RowResult>& rows) {
    std::ostringstream head;
    for (const auto& [key, value] : header) head << "# " << key << '=' << value << '\n';
    const std::string fingerprint = wc::hex64(wc::fnv1a64(head.str()));

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    out << head.str();
    out << "# config_fingerprint=" << fingerprint << '\n';
    out << "clusters";
    for (const auto& column : columns) out << '\t' << column;
    out << '\n';
    for (const auto& row : rows) {
        out << row.name;
        for (const auto& [name, value] : row.metrics) {
            (void)name;
            out << '\t' << wc::format_double(value);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void print_table(const std::vector<std::string>& columns,
                 const std::vector<RowResult>& rows) {
    std::cout << "clusters";
    for (const auto& column : columns) std::cout << '\t' << column;
    std::cout << '\n';
    for (const auto& row : rows) {
        std::cout << row.name;
        for (const auto& [name, value] : row.metrics) {
            (void)name;
            std::cout << '\t' << wc::format_double(value);
        }
        std::cout << '\n';
    }
}

wc::TrainConfig train_config_of(const RunArgs& args) {
    wc::TrainConfig config;
    config.l2_strength = args.l2;
    config.epochs = args.epochs;
    config.learning_rate = args.learning_rate;
    config.lr_decay = args.lr_decay;
    config.seed = args.train_seed;
    config.shuffle = args.shuffle;
    return config;
}

KeyValues resolved_config(const RunArgs& args, const std::vector<int>& ks) {
    KeyValues kv;
    kv.emplace_back("task", args.task);
    kv.emplace_back("vectors", args.vectors);
    kv.emplace_back("vectors_hash", wc::hex64(wc::hash_file(args.vectors)));
    kv.emplace_back("train", args.train_path);
    kv.emplace_back("train_hash", wc::hex64(wc::hash_file(args.train_path)));
    kv.emplace_back("test", args.test_path);
    kv.emplace_back("test_hash", wc::hex64(wc::hash_file(args.test_path)));
    std::string k_values;
    for (int k : ks) k_values += (k_values.empty() ? "" : ",") + std::to_string(k);
    kv.emplace_back("k_sweep", args.clusters ? k_values : "disabled");
    kv.emplace_back("cluster_seed", std::to_string(args.cluster_seed));
    kv.emplace_back("restarts", std::to_string(args.restarts));
    kv.emplace_back("max_iterations", std::to_string(args.max_iterations));
    kv.emplace_back("tolerance", wc::format_double(args.tolerance));
    kv.emplace_back("normalize", args.normalize ? "1" : "0");
    kv.emplace_back("ngrams", args.ngrams ? "1" : "0");
    kv.emplace_back("ngram_range",
                    std::to_string(args.ngram_lo) + "-" + std::to_string(args.ngram_hi));
    kv.emplace_back("char_ngrams", args.char_ngrams ? "1" : "0");
    kv.emplace_back("char_ngram_range",
                    std::to_string(args.char_lo) + "-" + std::to_string(args.char_hi));
    kv.emplace_back("capitalization", args.capitalization ? "1" : "0");
    for (const auto& path : args.lexicon_paths) {
        kv.emplace_back("lexicon", path);
        kv.emplace_back("lexicon_hash", wc::hex64(wc::hash_file(path)));
    }
    kv.emplace_back("word_window", std::to_string(args.word_window));
    kv.emplace_back("cluster_window", std::to_string(args.cluster_window));
    kv.emplace_back("pos_window", std::to_string(args.pos_window));
    kv.emplace_back("probabilistic", args.probabilistic ? "1" : "0");
    kv.emplace_back("l2_strength", wc::format_double(args.l2));
    kv.emplace_back("epochs", std::to_string(args.epochs));
    kv.emplace_back("learning_rate", wc::format_double(args.learning_rate));
    kv.emplace_back("lr_decay", wc::format_double(args.lr_decay));
    kv.emplace_back("train_seed", std::to_string(args.train_seed));
    kv.emplace_back("shuffle", args.shuffle ? "1" : "0");
    return kv;
}

std::shared_ptr<const wc::ClusterModel> fit_clusters(const wc::EmbeddingTable& table,
                                                     const RunArgs& args, int k) {
    wc::ClusterConfig config;
    config.k = k;
    config.seed = args.cluster_seed;
    config.restarts = args.restarts;
    config.max_iterations = args.max_iterations;
    config.tolerance = args.tolerance;
    return std::make_shared<const wc::ClusterModel>(wc::fit_with_restarts(table, config));
}

RowResult run_ner_row(const RunArgs& args, const std::string& row_name,
                      const std::vector<wc::TaggedSequence>& train_corpus,
                      const std::vector<wc::TaggedSequence>& test_corpus,
                      const wc::TagScheme& scheme,
                      std::shared_ptr<const wc::ClusterModel> clusters) {
    wc::TaggerConfig config;
    config.use_surface = args.ngrams;
    config.surface_window = args.word_window;
    config.use_capitalization = args.capitalization;
    config.use_clusters = clusters != nullptr;
    config.cluster_window = args.cluster_window;
    config.pos_window = args.pos_window;
    config.train = train_config_of(args);

    const wc::TaggerModel model = wc::train_tagger(train_corpus, scheme, config, clusters);
    std::vector<wc::TaggedSequence> predicted;
    predicted.reserve(test_corpus.size());
    for (const auto& seq : test_corpus) predicted.push_back(model.tag(seq));
    const wc::F1Result f1 = wc::entity_f1(test_corpus, predicted);

    if (!args.save_models.empty()) {
        model.save(args.save_models + "-" + row_name + ".tagger.tsv");
    }
    RowResult row;
    row.name = row_name;
    row.metrics = {{"precision", f1.precision}, {"recall", f1.recall}, {"f1", f1.f1}};
    return row;
}

int run_ner(const RunArgs& args, const std::vector<int>& ks, const KeyValues& header) {
    std::vector<wc::TaggedSequence> train_corpus = wc::read_conll(args.train_path);
    std::vector<wc::TaggedSequence> test_corpus = wc::read_conll(args.test_path);
    if (args.task == "ner-seg") {
        for (auto& seq : train_corpus) seq = wc::collapse_types(seq);
        for (auto& seq : test_corpus) seq = wc::collapse_types(seq);
    }
    std::vector<wc::TaggedSequence> all = train_corpus;
    all.insert(all.end(), test_corpus.begin(), test_corpus.end());
    const wc::TagScheme scheme(wc::entity_types_in(all));

    std::vector<RowResult> rows;
    rows.push_back(run_ner_row(args, "none", train_corpus, test_corpus, scheme, nullptr));
    if (args.clusters) {
        wc::EmbeddingTable table = wc::load_vectors(args.vectors);
        if (args.normalize) table = wc::l2_normalized(table);
        for (int k : ks) {
            rows.push_back(run_ner_row(args, std::to_string(k), train_corpus, test_corpus,
                                       scheme, fit_clusters(table, args, k)));
        }
    }
    write_report(args.out, header, {"precision", "recall", "f1"}, rows);
    print_table({"precision", "recall", "f1"}, rows);
    return 0;
}

wc::SentimentFeatureConfig sentiment_features_of(const RunArgs& args, bool with_clusters) {
    wc::SentimentFeatureConfig config;
    config.word_ngrams = args.ngrams;
    config.word_range = {args.ngram_lo, args.ngram_hi};
    config.char_ngrams = args.char_ngrams;
    config.char_range = {args.char_lo, args.char_hi};
    config.lexicons = !args.lexicon_paths.empty();
    config.clusters = with_clusters;
    return config;
}

std::vector<wc::SentimentLexicon> load_lexicons(const RunArgs& args) {
    std::vector<wc::SentimentLexicon> lexicons;
    for (const auto& path : args.lexicon_paths) {
        lexicons.push_back(
            wc::load_lexicon(path, std::filesystem::path(path).stem().string()));
    }
    return lexicons;
}

int run_sent_class(const RunArgs& args, const std::vector<int>& ks, const KeyValues& header) {
    const auto train_corpus = wc::read_sentiment_tsv(args.train_path);
    const auto test_corpus = wc::read_sentiment_tsv(args.test_path);
    const auto lexicons = load_lexicons(args);
    const wc::OrdinalScale scale = wc::OrdinalScale::five_point();

    auto run_row = [&](const std::string& name,
                       std::shared_ptr<const wc::ClusterModel> clusters) {
        const auto result = wc::run_sentiment_pipeline(
            train_corpus, test_corpus, sentiment_features_of(args, clusters != nullptr),
            lexicons, train_config_of(args), clusters.get(), scale);
        if (!args.save_models.empty()) {
            result.model.save(args.save_models + "-" + name + ".model.tsv");
        }
        RowResult row;
        row.name = name;
        row.metrics = {{"mae_macro", result.mae.value}};
        return row;
    };

    std::vector<RowResult> rows;
    rows.push_back(run_row("none", nullptr));
    if (args.clusters) {
        wc::EmbeddingTable table = wc::load_vectors(args.vectors);
        if (args.normalize) table = wc::l2_normalized(table);
        for (int k : ks) rows.push_back(run_row(std::to_string(k), fit_clusters(table, args, k)));
    }
    write_report(args.out, header, {"mae_macro"}, rows);
    print_table({"mae_macro"}, rows);
    return 0;
}

int run_sent_quant(const RunArgs& args, const std::vector<int>& ks, const KeyValues& header) {
    const auto train_corpus = wc::read_sentiment_tsv(args.train_path);
    const auto test_corpus = wc::read_sentiment_tsv(args.test_path);
    const auto lexicons = load_lexicons(args);
    const wc::OrdinalScale scale = wc::OrdinalScale::five_point();

    auto run_row = [&](const std::string& name,
                       std::shared_ptr<const wc::ClusterModel> clusters) {
        const auto features = sentiment_features_of(args, clusters != nullptr);

        std::vector<wc::LabeledExample> train_set;
        for (const auto& ex : train_corpus) {
            train_set.emplace_back(
                wc::sentiment_features(ex.text, features, lexicons, clusters.get()),
                ex.label);
        }
        const wc::LinearModel model =
            wc::train(train_set, train_config_of(args), scale.classes());

        std::vector<wc::SparseFeatureVector> test_features;
        std::vector<std::string> gold;
        std::vector<std::string> subjects;
        for (const auto& ex : test_corpus) {
            test_features.push_back(
                wc::sentiment_features(ex.text, features, lexicons, clusters.get()));
            gold.push_back(ex.label);
            subjects.push_back(ex.subject);
        }
        const wc::QuantifyResult result = wc::quantify_by_subject(
            model, test_features, gold, subjects, scale, args.probabilistic);

        if (!args.save_models.empty()) {
            model.save(args.save_models + "-" + name + ".model.tsv");
        }
        if (!args.subjects_out.empty()) {
            std::ofstream subj(args.subjects_out + "-" + name + ".tsv");
            if (!subj) throw std::runtime_error("cannot write subject details");
            for (const auto& entry : result.subjects) {
                subj << entry.subject;
                for (double p : entry.predicted.p) subj << '\t' << wc::format_double(p);
                subj << '\t' << wc::format_double(entry.emd_vs_gold) << '\n';
            }
        }
        RowResult row;
        row.name = name;
        row.metrics = {{"mean_emd", result.mean_emd}};
        return row;
    };

    std::vector<RowResult> rows;
    rows.push_back(run_row("none", nullptr));
    if (args.clusters) {
        wc::EmbeddingTable table = wc::load_vectors(args.vectors);
        if (args.normalize) table = wc::l2_normalized(table);
        for (int k : ks) rows.push_back(run_row(std::to_string(k), fit_clusters(table, args, k)));
    }
    write_report(args.out, header, {"mean_emd"}, rows);
    print_table({"mean_emd"}, rows);
    return 0;
}

int run_task(const RunArgs& args) {
    if (args.task.empty()) throw std::runtime_error("missing --task (or task= in config)");
    for (const auto& [value, name] :
         {std::pair{args.vectors, "--vectors"}, {args.train_path, "--train"},
          {args.test_path, "--test"}, {args.out, "--out"}}) {
        if (value.empty()) {
            throw std::runtime_error(std::string("missing ") + name +
                                     " (or its config key)");
        }
    }
    const std::vector<int> ks = parse_k_list(args.k_list);
    const KeyValues header = resolved_config(args, ks);
    if (args.task == "ner-seg" || args.task == "ner-class") {
        return run_ner(args, ks, header);
    }
    if (args.task == "sent-class") return run_sent_class(args, ks, header);
    if (args.task == "sent-quant") return run_sent_quant(args, ks, header);
    throw std::runtime_error("unknown task '" + args.task + "'");
}

bool parse_bool_value(const std::string& value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off") return false;
    throw std::runtime_error("bad boolean value '" + value + "'");
}

/// Flat `key=value` run configuration; keys are the run flags without the
/// leading dashes. Applied before command-line parsing, so flags override.
void apply_config_file(RunArgs& args, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);

    const std::map<std::string, std::function<void(const std::string&)>> setters = {
        {"task", [&](const std::string& v) { args.task = v; }},
        {"vectors", [&](const std::string& v) { args.vectors = v; }},
        {"train", [&](const std::string& v) { args.train_path = v; }},
        {"test", [&](const std::string& v) { args.test_path = v; }},
        {"k", [&](const std::string& v) { args.k_list = v; }},
        {"out", [&](const std::string& v) { args.out = v; }},
        {"save-models", [&](const std::string& v) { args.save_models = v; }},
        {"subjects-out", [&](const std::string& v) { args.subjects_out = v; }},
        {"cluster-seed",
         [&](const std::string& v) { args.cluster_seed = std::stoull(v); }},
        {"restarts", [&](const std::string& v) { args.restarts = std::stoi(v); }},
        {"max-iters", [&](const std::string& v) { args.max_iterations = std::stoi(v); }},
        {"tolerance", [&](const std::string& v) { args.tolerance = std::stod(v); }},
        {"normalize", [&](const std::string& v) { args.normalize = parse_bool_value(v); }},
        {"ngrams", [&](const std::string& v) { args.ngrams = parse_bool_value(v); }},
        {"ngram-lo", [&](const std::string& v) { args.ngram_lo = std::stoi(v); }},
        {"ngram-hi", [&](const std::string& v) { args.ngram_hi = std::stoi(v); }},
        {"char-ngrams",
         [&](const std::string& v) { args.char_ngrams = parse_bool_value(v); }},
        {"char-lo", [&](const std::string& v) { args.char_lo = std::stoi(v); }},
        {"char-hi", [&](const std::string& v) { args.char_hi = std::stoi(v); }},
        {"clusters", [&](const std::string& v) { args.clusters = parse_bool_value(v); }},
        {"capitalization",
         [&](const std::string& v) { args.capitalization = parse_bool_value(v); }},
        {"lexicon", [&](const std::string& v) { args.lexicon_paths.push_back(v); }},
        {"word-window", [&](const std::string& v) { args.word_window = std::stoi(v); }},
        {"cluster-window",
         [&](const std::string& v) { args.cluster_window = std::stoi(v); }},
        {"pos-window", [&](const std::string& v) { args.pos_window = std::stoi(v); }},
        {"probabilistic",
         [&](const std::string& v) { args.probabilistic = parse_bool_value(v); }},
        {"l2", [&](const std::string& v) { args.l2 = std::stod(v); }},
        {"epochs", [&](const std::string& v) { args.epochs = std::stoi(v); }},
        {"lr", [&](const std::string& v) { args.learning_rate = std::stod(v); }},
        {"lr-decay", [&](const std::string& v) { args.lr_decay = std::stod(v); }},
        {"train-seed", [&](const std::string& v) { args.train_seed = std::stoull(v); }},
        {"shuffle", [&](const std::string& v) { args.shuffle = parse_bool_value(v); }},
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected `key=value`");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": unknown config key '" + key + "'");
        }
        try {
            it->second(value);
        } catch (const std::exception& err) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " +
                                     err.what());
        }
    }
}

/// --config must take effect before the remaining flags are parsed.
std::string find_config_argument(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return std::string(arg.substr(9));
    }
    return {};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "wordclust: word-embedding clustering and cluster-membership features\n"
        "for NER tagging, five-point sentiment classification and sentiment\n"
        "quantification. Tip: low-dimensional skipgram-style vectors with a\n"
        "high cluster count (k in {500,1000,2000}) are a strong first choice."};
    app.require_subcommand(1);

    ClusterArgs cluster_args;
    CLI::App* cluster = app.add_subcommand(
        "cluster", "Cluster a vector file and export a word->cluster lexicon");
    cluster->add_option("--vectors", cluster_args.vectors, "Text vector file")
        ->required()
        ->check(CLI::ExistingFile);
    cluster->add_option("--k", cluster_args.k, "Number of clusters")->required();
    cluster->add_option("--seed", cluster_args.seed, "Base RNG seed");
    cluster->add_option("--restarts", cluster_args.restarts,
                        "Independent seeded restarts, best inertia wins");
    cluster->add_option("--max-iters", cluster_args.max_iterations, "Lloyd iteration cap");
    cluster->add_option("--tolerance", cluster_args.tolerance, "Centroid-shift stop");
    cluster->add_flag("--normalize", cluster_args.normalize,
                      "L2-normalize vectors before clustering");
    cluster->add_option("--out", cluster_args.out, "Lexicon TSV output path")->required();

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Run a task sweep and write a report");
    std::string config_path;
    run->add_option("--config", config_path,
                    "Flat key=value config file (flags override)");
    try {
        const std::string early_config = find_config_argument(argc, argv);
        if (!early_config.empty()) apply_config_file(run_args, early_config);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    run->add_option("--task", run_args.task,
                    "One of: ner-seg, ner-class, sent-class, sent-quant");
    run->add_option("--vectors", run_args.vectors, "Text vector file");
    run->add_option("--train", run_args.train_path, "Training corpus");
    run->add_option("--test", run_args.test_path, "Evaluation corpus");
    run->add_option("--k", run_args.k_list, "Comma-separated cluster-count sweep");
    run->add_option("--out", run_args.out, "Report TSV output path");
    run->add_option("--save-models", run_args.save_models,
                    "Path prefix for per-row model files");
    run->add_option("--subjects-out", run_args.subjects_out,
                    "Path prefix for per-subject quantification TSVs");
    run->add_option("--cluster-seed", run_args.cluster_seed, "Clustering base seed");
    run->add_option("--restarts", run_args.restarts, "Clustering restarts");
    run->add_option("--max-iters", run_args.max_iterations, "Lloyd iteration cap");
    run->add_option("--tolerance", run_args.tolerance, "Centroid-shift stop");
    run->add_flag("--normalize", run_args.normalize, "L2-normalize vectors");
    run->add_flag("--ngrams,!--no-ngrams", run_args.ngrams,
                  "Word n-grams (NER: surface window features)");
    run->add_option("--ngram-lo", run_args.ngram_lo, "Word n-gram lower bound");
    run->add_option("--ngram-hi", run_args.ngram_hi, "Word n-gram upper bound");
    run->add_flag("--char-ngrams,!--no-char-ngrams", run_args.char_ngrams,
                  "Character n-grams (sentiment tasks)");
    run->add_option("--char-lo", run_args.char_lo, "Char n-gram lower bound");
    run->add_option("--char-hi", run_args.char_hi, "Char n-gram upper bound");
    run->add_flag("--clusters,!--no-clusters", run_args.clusters,
                  "Sweep cluster features (off: baseline row only)");
    run->add_flag("--capitalization,!--no-capitalization", run_args.capitalization,
                  "Capitalization features (NER)");
    run->add_option("--lexicon", run_args.lexicon_paths,
                    "Sentiment lexicon TSV (repeatable)")
        ->check(CLI::ExistingFile);
    run->add_option("--word-window", run_args.word_window, "Surface feature window");
    run->add_option("--cluster-window", run_args.cluster_window,
                    "Per-token cluster feature window");
    run->add_option("--pos-window", run_args.pos_window, "POS annotation window");
    run->add_flag("--probabilistic", run_args.probabilistic,
                  "Probabilistic classify-and-count (sent-quant)");
    run->add_option("--l2", run_args.l2, "L2 regularization strength");
    run->add_option("--epochs", run_args.epochs, "Training epochs");
    run->add_option("--lr", run_args.learning_rate, "Initial learning rate");
    run->add_option("--lr-decay", run_args.lr_decay, "Learning-rate decay");
    run->add_option("--train-seed", run_args.train_seed, "Training RNG seed");
    run->add_flag("--shuffle,!--no-shuffle", run_args.shuffle,
                  "Shuffle training data each epoch");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cluster->parsed()) return run_cluster(cluster_args);
        return run_task(run_args);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
