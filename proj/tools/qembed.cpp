// qembed: complex-valued Skip-gram embeddings, PQC state fitting and
// word-similarity evaluation. See README.md for the pipeline.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qembed/circuit.hpp"
#include "qembed/corpus.hpp"
#include "qembed/eval.hpp"
#include "qembed/fit.hpp"
#include "qembed/io.hpp"
#include "qembed/manifest.hpp"
#include "qembed/pqc_train.hpp"
#include "qembed/trainer.hpp"
#include "qembed/vocab.hpp"

using namespace qembed;

namespace {

int default_threads() {
    if (const char* env = std::getenv("QEMBED_THREADS")) {
        const int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void write_manifest(const std::string& subcommand, const std::vector<std::string>& args,
                    uint64_t seed, int threads, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, double wall) {
    if (outputs.empty()) return;
    RunManifest m;
    m.subcommand = subcommand;
    m.args = args;
    m.seed = seed;
    m.threads = threads;
    m.inputs = inputs;
    m.outputs = outputs;
    m.wall_clock_seconds = wall;
    m.save(outputs.front() + ".manifest.json");
}

// post-write self check: outputs must reopen cleanly
void validate_output(const std::string& path) {
    const std::string magic = file_magic(path);
    if (magic == "CWV1") {
        load_embeddings_binary(path);
    } else if (magic == "QPF1") {
        load_pqc_params(path);
    }
    // text outputs are checked by their writers
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// "1..4" or "2" or "1,2,3"
std::vector<int> parse_layer_range(const std::string& s) {
    const auto dots = s.find("..");
    std::vector<int> out;
    if (dots != std::string::npos) {
        const int lo = std::stoi(s.substr(0, dots));
        const int hi = std::stoi(s.substr(dots + 2));
        for (int l = lo; l <= hi; ++l) out.push_back(l);
    } else {
        for (const auto& part : split_csv(s)) out.push_back(std::stoi(part));
    }
    if (out.empty()) throw std::invalid_argument("empty layer range");
    return out;
}

ScoringModel load_model(const std::string& path) {
    const std::string magic = file_magic(path);
    if (magic == "QPF1") {
        const PqcParamFile f = load_pqc_params(path);
        const AnsatzSpec spec(f.ansatz_id, static_cast<int>(f.n_qubits),
                              static_cast<int>(f.n_layers));
        return ScoringModel::from_pqc(f, spec);
    }
    if (magic == "CWV1") return ScoringModel::from_embeddings(load_embeddings_binary(path));
    // fall back to the text format
    return ScoringModel::from_embeddings(load_embeddings_text(path));
}

int run(std::vector<std::string> args);

int cmd_vocab(CLI::App& app, const std::vector<std::string>& raw_args) {
    auto corpus = app.get_option("--corpus")->as<std::string>();
    auto min_count = app.get_option("--min-count")->as<int64_t>();
    auto output = app.get_option("--output")->as<std::string>();
    const bool lowercase = !app.get_option("--no-lowercase")->as<bool>();

    Timer timer;
    const auto tokens = read_tokens(corpus, lowercase);
    const Vocabulary vocab = Vocabulary::build(tokens, min_count);
    vocab.save(output);
    std::cout << "vocabulary: " << vocab.size() << " words, " << vocab.total_tokens()
              << " tokens (min-count " << min_count << ")\n";
    write_manifest("vocab", raw_args, 0, 1, {corpus}, {output}, timer.seconds());
    return 0;
}

int cmd_train(CLI::App& app, const std::vector<std::string>& raw_args) {
    const auto corpus_path = app.get_option("--corpus")->as<std::string>();
    const auto vocab_path = app.get_option("--vocab")->as<std::string>();
    const auto output = app.get_option("--output")->as<std::string>();
    const auto mode = app.get_option("--mode")->as<std::string>();
    const auto loss_name = app.get_option("--loss")->as<std::string>();
    const auto table_size = app.get_option("--table-size")->as<size_t>();
    const bool save_context = app.get_option("--save-context")->as<bool>();
    const auto seed = app.get_option("--seed")->as<uint64_t>();
    const auto threads = app.get_option("--threads")->as<int>();

    Timer timer;
    const Vocabulary vocab = Vocabulary::load(vocab_path);
    const CorpusIds corpus = CorpusIds::load(corpus_path, vocab);
    const NegativeSamplingTable table(vocab, std::max(table_size, vocab.size()));

    std::vector<std::string> outputs;
    if (mode == "real" || mode == "complex") {
        TrainingConfig cfg;
        cfg.dim = app.get_option("--size")->as<size_t>();
        cfg.window = app.get_option("--window")->as<int>();
        cfg.negatives = app.get_option("--negative")->as<int>();
        cfg.subsample_t = app.get_option("--sample")->as<double>();
        cfg.epochs = app.get_option("--iter")->as<int>();
        cfg.lr = app.get_option("--alpha")->as<double>();
        cfg.scale_D = app.get_option("--scale-D")->as<double>();
        cfg.threads = threads;
        cfg.seed = seed;
        cfg.loss = mode == "real" ? LossVariant::real_sigmoid
                                  : loss_variant_from_name(loss_name);
        cfg.optimizer = app.get_option("--optimizer")->as<std::string>() == "adam"
                            ? Optimizer::adam
                            : Optimizer::sgd_linear_decay;
        if (app.get_option("--skip-neg-collisions")->as<bool>())
            cfg.neg_policy = NegativePolicy::skip;
        if (app.get_option("--static-window")->as<bool>()) cfg.dynamic_window = false;

        SgnsTrainer trainer(corpus, vocab, table, cfg);
        TrainStats stats;
        ComplexEmbeddingMatrix matrix = trainer.train(&stats);
        std::cout << "trained " << stats.examples << " examples, mean loss "
                  << stats.mean_loss << "\n";

        EmbeddingModel m;
        m.words = vocab.words();
        m.mode = matrix.mode;
        m.table = std::move(matrix.focal);
        save_embeddings_binary(m, output);
        outputs.push_back(output);
        if (save_context) {
            m.table = std::move(matrix.context);
            save_embeddings_binary(m, output + ".ctx");
            outputs.push_back(output + ".ctx");
        }
    } else if (mode == "pqc-focal" || mode == "pqc-both") {
        PqcTrainConfig cfg;
        cfg.ansatz_id = app.get_option("--ansatz")->as<std::string>();
        cfg.n_layers = app.get_option("--layers")->as<int>();
        cfg.window = app.get_option("--window")->as<int>();
        cfg.negatives = app.get_option("--negative")->as<int>();
        cfg.subsample_t = app.get_option("--sample")->as<double>();
        cfg.scale_D = app.get_option("--scale-D")->as<double>();
        cfg.lr_pqc = app.get_option("--lr-pqc")->as<double>();
        cfg.threads = threads;
        cfg.seed = seed;
        if (app.get_option("--static-window")->as<bool>()) cfg.dynamic_window = false;
        const size_t dim = app.get_option("--size")->as<size_t>();
        auto* iter_opt = app.get_option("--iter");
        cfg.epochs = iter_opt->count() ? iter_opt->as<int>()
                                       : (mode == "pqc-both" ? 20 : 10);

        if (mode == "pqc-focal") {
            PqcFocalTrainer trainer(corpus, vocab, table, cfg, dim);
            auto [focal, ctx] = trainer.train();
            PqcParamFile f{focal.ansatz.id, static_cast<uint32_t>(focal.ansatz.n_qubits),
                           static_cast<uint32_t>(focal.ansatz.n_layers), vocab.words(),
                           std::move(focal.params)};
            save_pqc_params(f, output);
            outputs.push_back(output);
            EmbeddingModel m;
            m.words = vocab.words();
            m.mode = EmbeddingMode::complex;
            m.table = std::move(ctx.context);
            save_embeddings_binary(m, output + ".ctx");
            outputs.push_back(output + ".ctx");
        } else {
            PqcBothTrainer trainer(corpus, vocab, table, cfg, dim);
            auto [focal, ctx] = trainer.train();
            PqcParamFile f{focal.ansatz.id, static_cast<uint32_t>(focal.ansatz.n_qubits),
                           static_cast<uint32_t>(focal.ansatz.n_layers), vocab.words(),
                           std::move(focal.params)};
            save_pqc_params(f, output);
            outputs.push_back(output);
            f.angles = std::move(ctx.params);
            save_pqc_params(f, output + ".ctx");
            outputs.push_back(output + ".ctx");
        }
    } else {
        throw CLI::ValidationError("--mode", "unknown mode: " + mode);
    }

    for (const auto& o : outputs) validate_output(o);
    write_manifest("train", raw_args, seed, threads, {corpus_path, vocab_path}, outputs,
                   timer.seconds());
    return 0;
}

int cmd_fit(CLI::App& app, const std::vector<std::string>& raw_args) {
    const auto emb_path = app.get_option("--embeddings")->as<std::string>();
    const auto output = app.get_option("--output")->as<std::string>();
    const auto report_path = app.get_option("--report")->as<std::string>();

    FitConfig cfg;
    cfg.max_iters = app.get_option("--iters")->as<int>();
    cfg.lr = app.get_option("--lr")->as<double>();
    cfg.seed = app.get_option("--seed")->as<uint64_t>();
    cfg.threads = app.get_option("--threads")->as<int>();
    cfg.use_sgd = app.get_option("--plain-sgd")->as<bool>();

    const auto ansatz_id = app.get_option("--ansatz")->as<std::string>();
    const int layers = app.get_option("--layers")->as<int>();

    Timer timer;
    const EmbeddingModel src = load_embeddings_binary(emb_path);
    const int n_qubits = PqcFocalTrainer::qubits_for(src.table.dim());
    const AnsatzSpec ansatz(ansatz_id, n_qubits, layers);

    const VocabularyFit fit = fit_vocabulary(src.table, ansatz, cfg);

    PqcParamFile f{ansatz.id, static_cast<uint32_t>(n_qubits),
                   static_cast<uint32_t>(layers), src.words, fit.params};
    save_pqc_params(f, output);
    validate_output(output);

    // infidelity report: summary plus a log10 histogram
    std::ostringstream rep;
    rep << "words\t" << fit.results.size() << "\n";
    rep << "mean_infidelity\t" << fit.mean_infidelity() << "\n";
    rep << "frac_below_1e-3\t" << fit.fraction_below(1e-3) << "\n";
    rep << "frac_below_1e-6\t" << fit.fraction_below(1e-6) << "\n";
    std::map<int, size_t> hist;
    for (const auto& r : fit.results) {
        const double inf = std::max(r.final_infidelity, 1e-12);
        hist[static_cast<int>(std::floor(std::log10(inf)))]++;
    }
    rep << "histogram (log10 infidelity -> words)\n";
    for (const auto& [bucket, n] : hist) rep << bucket << "\t" << n << "\n";
    std::cout << rep.str();
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << rep.str();
    }
    std::vector<std::string> outputs = {output};
    if (!report_path.empty()) outputs.push_back(report_path);
    write_manifest("fit", raw_args, cfg.seed, cfg.threads, {emb_path}, outputs,
                   timer.seconds());
    return 0;
}

int cmd_sweep(CLI::App& app, const std::vector<std::string>& raw_args) {
    const auto emb_path = app.get_option("--embeddings")->as<std::string>();
    const auto output = app.get_option("--output")->as<std::string>();
    const auto ansatz_ids = split_csv(app.get_option("--ansatz")->as<std::string>());
    const auto layer_list = parse_layer_range(app.get_option("--layers")->as<std::string>());
    const auto dataset_paths = split_csv(app.get_option("--datasets")->as<std::string>());

    FitConfig cfg;
    cfg.max_iters = app.get_option("--iters")->as<int>();
    cfg.lr = app.get_option("--lr")->as<double>();
    cfg.seed = app.get_option("--seed")->as<uint64_t>();
    cfg.threads = app.get_option("--threads")->as<int>();

    Timer timer;
    const EmbeddingModel src = load_embeddings_binary(emb_path);
    const int n_qubits = PqcFocalTrainer::qubits_for(src.table.dim());

    std::vector<SimilarityDataset> datasets;
    for (const auto& p : dataset_paths) datasets.push_back(parse_dataset(p));

    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot open for writing: " + output);
    out << "ansatz,layers,mean_infidelity";
    for (const auto& d : datasets) out << ",spearman:" << d.name;
    out << "\n";
    for (const auto& id : ansatz_ids) {
        for (int l : layer_list) {
            const AnsatzSpec ansatz(id, n_qubits, l);
            const VocabularyFit fit = fit_vocabulary(src.table, ansatz, cfg);
            PqcParamFile f{id, static_cast<uint32_t>(n_qubits), static_cast<uint32_t>(l),
                           src.words, fit.params};
            const ScoringModel model = ScoringModel::from_pqc(f, ansatz);
            out << id << ',' << l << ',' << fit.mean_infidelity();
            for (const auto& d : datasets) {
                const EvalReport r = evaluate(model, d);
                out << ',' << r.spearman;
            }
            out << "\n";
            out.flush();
            std::cout << id << " l=" << l << " mean infidelity " << fit.mean_infidelity()
                      << "\n";
        }
    }
    write_manifest("sweep", raw_args, cfg.seed, cfg.threads, {emb_path}, {output},
                   timer.seconds());
    return 0;
}

int cmd_eval(CLI::App& app, const std::vector<std::string>& raw_args) {
    const auto model_paths = app.get_option("--model")->as<std::vector<std::string>>();
    const auto dataset_paths = split_csv(app.get_option("--dataset")->as<std::string>());
    const auto format_name = app.get_option("--format")->as<std::string>();
    const auto csv_path = app.get_option("--csv")->as<std::string>();
    const auto dump_prefix = app.get_option("--dump-scores")->as<std::string>();

    Timer timer;
    std::vector<SimilarityDataset> datasets;
    for (const auto& p : dataset_paths) {
        DatasetFormat fmt = DatasetFormat::simple;
        if (format_name == "scws" ||
            (format_name == "auto" && p.find("scws") != std::string::npos))
            fmt = DatasetFormat::scws;
        datasets.push_back(parse_dataset(p, fmt));
    }

    std::ostringstream csv;
    csv << "model,dataset,pairs,coverage,spearman\n";
    std::printf("%-28s %-20s %8s %9s %9s\n", "model", "dataset", "pairs", "coverage",
                "spearman");
    for (const auto& mp : model_paths) {
        const ScoringModel model = load_model(mp);
        for (const auto& d : datasets) {
            std::vector<double> scores;
            const EvalReport r = evaluate(model, d, &scores);
            std::printf("%-28s %-20s %5zu/%-3zu %8.1f%% %9.4f\n", mp.c_str(),
                        d.name.c_str(), r.covered_pairs, r.total_pairs,
                        100.0 * r.coverage(), r.spearman);
            csv << mp << ',' << d.name << ',' << r.covered_pairs << ','
                << r.coverage() << ',' << r.spearman << "\n";
            if (!dump_prefix.empty()) {
                std::ofstream dump(dump_prefix + "." + d.name + ".scores");
                size_t k = 0;
                for (const auto& p : d.pairs) {
                    if (!model.contains(p.a) || !model.contains(p.b)) continue;
                    dump << p.a << '\t' << p.b << '\t' << p.score << '\t' << scores[k++]
                         << '\n';
                }
            }
        }
    }
    std::vector<std::string> outputs;
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        out << csv.str();
        outputs.push_back(csv_path);
    }
    write_manifest("eval", raw_args, 0, 1, model_paths, outputs, timer.seconds());
    return 0;
}

int cmd_export(CLI::App& app, const std::vector<std::string>& raw_args) {
    const auto input = app.get_option("--input")->as<std::string>();
    const auto output = app.get_option("--output")->as<std::string>();
    const auto to = app.get_option("--to")->as<std::string>();

    Timer timer;
    const EmbeddingModel m = file_magic(input) == "CWV1" ? load_embeddings_binary(input)
                                                         : load_embeddings_text(input);
    if (to == "text")
        save_embeddings_text(m, output);
    else if (to == "binary")
        save_embeddings_binary(m, output);
    else
        throw CLI::ValidationError("--to", "expected text or binary");
    validate_output(output);
    write_manifest("export", raw_args, 0, 1, {input}, {output}, timer.seconds());
    return 0;
}

int run(std::vector<std::string> args) {
    CLI::App app{"complex-valued word embeddings with PQC state fitting"};
    app.require_subcommand(0, 1);

    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "replay a run manifest");

    auto* vocab = app.add_subcommand("vocab", "build a vocabulary from a corpus");
    vocab->add_option("--corpus", "input corpus (plain text)")->required();
    vocab->add_option("--min-count", "frequency cutoff")->default_val(int64_t(5));
    vocab->add_option("--output", "vocabulary file")->required();
    vocab->add_flag("--no-lowercase", "keep token case");

    auto* train = app.add_subcommand("train", "train embeddings");
    train->add_option("--corpus")->required();
    train->add_option("--vocab")->required();
    train->add_option("--output")->required();
    train->add_option("--mode", "real | complex | pqc-focal | pqc-both")
        ->default_val(std::string("complex"));
    train->add_option("--loss", "sigmoid | direct | unnorm-sigmoid | real")
        ->default_val(std::string("sigmoid"));
    train->add_option("--size", "embedding dimension")->default_val(size_t(64));
    train->add_option("--window")->default_val(5);
    train->add_option("--negative")->default_val(5);
    train->add_option("--sample", "subsampling threshold t")->default_val(1e-3);
    train->add_option("--iter", "epochs");
    train->add_option("--alpha", "initial learning rate")->default_val(0.025);
    train->add_option("--scale-D")->default_val(3.5);
    train->add_option("--threads")->default_val(default_threads());
    train->add_option("--seed")->default_val(uint64_t(1));
    train->add_option("--table-size", "negative table size")->default_val(size_t(100000000));
    train->add_option("--optimizer", "sgd | adam")->default_val(std::string("sgd"));
    train->add_option("--ansatz")->default_val(std::string("A5"));
    train->add_option("--layers")->default_val(3);
    train->add_option("--lr-pqc", "Adam step for circuit angles")->default_val(0.01);
    train->add_flag("--save-context", "also write the context table");
    train->add_flag("--skip-neg-collisions",
                    "drop colliding negatives instead of redrawing");
    train->add_flag("--static-window", "disable dynamic window sampling");

    auto* fit = app.add_subcommand("fit", "fit one PQC per word to embeddings");
    fit->add_option("--embeddings")->required();
    fit->add_option("--output")->required();
    fit->add_option("--ansatz")->default_val(std::string("A5"));
    fit->add_option("--layers")->default_val(3);
    fit->add_option("--iters")->default_val(5000);
    fit->add_option("--lr")->default_val(0.01);
    fit->add_option("--seed")->default_val(uint64_t(1));
    fit->add_option("--threads")->default_val(default_threads());
    fit->add_option("--report", "write the infidelity report here")
        ->default_val(std::string(""));
    fit->add_flag("--plain-sgd", "plain gradient ascent instead of Adam");

    auto* sweep = app.add_subcommand("sweep", "ansatz / layer fitting grid");
    sweep->add_option("--embeddings")->required();
    sweep->add_option("--output", "CSV output")->required();
    sweep->add_option("--ansatz", "comma-separated catalog ids")
        ->default_val(std::string("A5,A14"));
    sweep->add_option("--layers", "range like 1..4")->default_val(std::string("1..4"));
    sweep->add_option("--iters")->default_val(10000);
    sweep->add_option("--lr")->default_val(0.01);
    sweep->add_option("--seed")->default_val(uint64_t(1));
    sweep->add_option("--threads")->default_val(default_threads());
    sweep->add_option("--datasets", "comma-separated dataset paths")->required();

    auto* eval = app.add_subcommand("eval", "evaluate models on similarity datasets");
    eval->add_option("--model", "model file(s)")->required()->expected(-1)->take_all();
    eval->add_option("--dataset", "comma-separated dataset paths")->required();
    eval->add_option("--format", "auto | simple | scws")->default_val(std::string("auto"));
    eval->add_option("--csv", "machine-readable output")->default_val(std::string(""));
    eval->add_option("--dump-scores", "per-pair score dump prefix")
        ->default_val(std::string(""));

    auto* exp = app.add_subcommand("export", "convert embeddings binary <-> text");
    exp->add_option("--input")->required();
    exp->add_option("--output")->required();
    exp->add_option("--to", "text | binary")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (!manifest_path.empty()) {
        const RunManifest m = RunManifest::load(manifest_path);
        std::vector<std::string> replay = m.args;
        return run(std::move(replay));
    }

    try {
        if (vocab->parsed()) return cmd_vocab(*vocab, args);
        if (train->parsed()) return cmd_train(*train, args);
        if (fit->parsed()) return cmd_fit(*fit, args);
        if (sweep->parsed()) return cmd_sweep(*sweep, args);
        if (eval->parsed()) return cmd_eval(*eval, args);
        if (exp->parsed()) return cmd_export(*exp, args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args));
}
