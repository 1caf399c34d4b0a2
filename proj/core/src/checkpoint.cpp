#include "transmeter/model/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "transmeter/errors.hpp"

namespace transmeter {

namespace {

constexpr const char* kMagic = "transmeter-checkpoint 1";

std::string hex_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_hex_double(const std::string& token) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw LoadError("checkpoint: cannot parse float token '" + token + "'");
    }
    return v;
}

void write_array(std::ostream& out, const std::string& tag, std::span<const double> values) {
    out << tag << ' ' << values.size() << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << hex_double(values[i]) << (i + 1 == values.size() ? '\n' : ' ');
    }
    if (values.empty()) out << '\n';
}

const char* activation_name(nn::Activation a) {
    switch (a) {
        case nn::Activation::Relu: return "relu";
        case nn::Activation::Sigmoid: return "sigmoid";
        case nn::Activation::Linear: return "linear";
    }
    return "linear";
}

nn::Activation activation_from(const std::string& name) {
    if (name == "relu") return nn::Activation::Relu;
    if (name == "sigmoid") return nn::Activation::Sigmoid;
    if (name == "linear") return nn::Activation::Linear;
    throw LoadError("checkpoint: unknown activation '" + name + "'");
}

void write_network(std::ostream& out, const std::string& role, const nn::Network& net) {
    out << "stack " << role << " layers " << net.layers().size() << '\n';
    for (std::size_t i = 0; i < net.layers().size(); ++i) {
        const nn::DenseLayer& l = net.layers()[i];
        out << "layer " << i << " in " << l.in_dim() << " out " << l.out_dim() << " act "
            << activation_name(l.activation) << " bn " << (l.has_batchnorm ? 1 : 0) << '\n';
        write_array(out, "weight", l.weight.flat());
        write_array(out, "bias", {l.bias.data(), l.bias.size()});
        if (l.has_batchnorm) {
            out << "bn_momentum " << hex_double(l.bn_momentum) << '\n';
            out << "bn_epsilon " << hex_double(l.bn_epsilon) << '\n';
            write_array(out, "bn_gamma", {l.bn_gamma.data(), l.bn_gamma.size()});
            write_array(out, "bn_beta", {l.bn_beta.data(), l.bn_beta.size()});
            write_array(out, "bn_running_mean",
                        {l.bn_running_mean.data(), l.bn_running_mean.size()});
            write_array(out, "bn_running_var",
                        {l.bn_running_var.data(), l.bn_running_var.size()});
        }
    }
}

class Reader {
public:
    explicit Reader(const std::filesystem::path& path) : in_(path), path_(path.string()) {
        if (!in_) {
            throw LoadError("cannot open checkpoint '" + path_ + "'");
        }
    }

    std::string next_line() {
        std::string line;
        if (!std::getline(in_, line)) {
            throw LoadError("checkpoint '" + path_ + "' ended unexpectedly");
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }

    // "key value" line; checks the key and returns the rest.
    std::string expect(const std::string& key) {
        const std::string line = next_line();
        if (line.rfind(key + " ", 0) != 0) {
            throw LoadError("checkpoint '" + path_ + "': expected '" + key + " ...', got '" +
                            line + "'");
        }
        return line.substr(key.size() + 1);
    }

    std::vector<double> read_array(const std::string& tag) {
        std::istringstream head(expect(tag));
        std::size_t n = 0;
        head >> n;
        std::vector<double> values;
        values.reserve(n);
        const std::string line = next_line();
        std::istringstream body(line);
        std::string token;
        while (body >> token) values.push_back(parse_hex_double(token));
        if (values.size() != n) {
            throw LoadError("checkpoint '" + path_ + "': array '" + tag + "' has " +
                            std::to_string(values.size()) + " of " + std::to_string(n) +
                            " values");
        }
        return values;
    }

    nn::Network read_network(const std::string& role) {
        std::istringstream head(expect("stack"));
        std::string got_role, layers_kw;
        std::size_t n_layers = 0;
        head >> got_role >> layers_kw >> n_layers;
        if (got_role != role) {
            throw LoadError("checkpoint '" + path_ + "': expected stack '" + role + "', got '" +
                            got_role + "'");
        }
        std::vector<nn::DenseLayer> layers;
        for (std::size_t i = 0; i < n_layers; ++i) {
            std::istringstream meta(expect("layer"));
            std::size_t idx = 0, in = 0, out = 0;
            std::string kw_in, kw_out, kw_act, act, kw_bn;
            int bn = 0;
            meta >> idx >> kw_in >> in >> kw_out >> out >> kw_act >> act >> kw_bn >> bn;
            nn::DenseLayer layer;
            layer.activation = activation_from(act);
            layer.has_batchnorm = bn != 0;
            const std::vector<double> w = read_array("weight");
            if (w.size() != in * out) {
                throw LoadError("checkpoint '" + path_ + "': weight size mismatch in layer " +
                                std::to_string(idx));
            }
            layer.weight = nn::Matrix(out, in);
            std::copy(w.begin(), w.end(), layer.weight.data());
            layer.bias = read_array("bias");
            if (layer.has_batchnorm) {
                layer.bn_momentum = parse_hex_double(expect("bn_momentum"));
                layer.bn_epsilon = parse_hex_double(expect("bn_epsilon"));
                layer.bn_gamma = read_array("bn_gamma");
                layer.bn_beta = read_array("bn_beta");
                layer.bn_running_mean = read_array("bn_running_mean");
                layer.bn_running_var = read_array("bn_running_var");
            }
            layers.push_back(std::move(layer));
        }
        return nn::Network(std::move(layers));
    }

private:
    std::ifstream in_;
    std::string path_;
};

std::vector<std::size_t> hidden_widths_of(const nn::Network& net) {
    std::vector<std::size_t> widths;
    for (std::size_t i = 0; i + 1 < net.layers().size(); ++i) {
        widths.push_back(net.layers()[i].out_dim());
    }
    return widths;
}

}  // namespace

void save_source_checkpoint(const std::filesystem::path& path, const SourceModel& model,
                            const SourceCheckpointMeta& meta) {
    std::ofstream out(path);
    if (!out) {
        throw LoadError("cannot write checkpoint '" + path.string() + "'");
    }
    out << kMagic << '\n';
    out << "kind source\n";
    out << "dataset " << meta.dataset << '\n';
    out << "seed " << meta.seed << '\n';
    out << "split " << hex_double(meta.split_fraction) << '\n';
    out << "test_accuracy " << hex_double(meta.test_accuracy) << '\n';
    out << "d_s " << model.input_dim << '\n';
    write_network(out, "classifier", model.net);
    out << "end\n";
}

SourceModel load_source_checkpoint(const std::filesystem::path& path,
                                   SourceCheckpointMeta* meta) {
    Reader reader(path);
    if (reader.next_line() != kMagic) {
        throw LoadError("checkpoint '" + path.string() + "': bad magic line");
    }
    if (reader.expect("kind") != "source") {
        throw LoadError("checkpoint '" + path.string() + "' is not a source checkpoint");
    }
    SourceCheckpointMeta m;
    m.dataset = reader.expect("dataset");
    m.seed = std::stoull(reader.expect("seed"));
    m.split_fraction = parse_hex_double(reader.expect("split"));
    m.test_accuracy = parse_hex_double(reader.expect("test_accuracy"));
    SourceModel model;
    model.input_dim = std::stoul(reader.expect("d_s"));
    model.net = reader.read_network("classifier");
    model.hidden_widths = hidden_widths_of(model.net);
    if (model.net.input_dim() != model.input_dim) {
        throw LoadError("checkpoint '" + path.string() + "': d_s does not match the first layer");
    }
    if (meta) *meta = m;
    return model;
}

void save_transmeter_checkpoint(const std::filesystem::path& path, const TransmeterModel& model,
                                const TransmeterCheckpointMeta& meta) {
    std::ofstream out(path);
    if (!out) {
        throw LoadError("cannot write checkpoint '" + path.string() + "'");
    }
    out << kMagic << '\n';
    out << "kind transmeter\n";
    out << "source_dataset " << meta.source_dataset << '\n';
    out << "target_dataset " << meta.target_dataset << '\n';
    out << "d_s " << model.d_s << '\n';
    out << "d_t " << model.d_t << '\n';
    out << "alpha " << hex_double(model.alpha) << '\n';
    out << "beta " << hex_double(model.beta) << '\n';
    out << "flip " << (meta.flip ? 1 : 0) << '\n';
    out << "seed " << meta.seed << '\n';
    write_network(out, "encoder", model.encoder);
    write_network(out, "decoder", model.decoder);
    write_network(out, "label_predictor", model.label_predictor);
    write_network(out, "domain_classifier", model.domain_classifier);
    out << "end\n";
}

TransmeterModel load_transmeter_checkpoint(const std::filesystem::path& path,
                                           TransmeterCheckpointMeta* meta) {
    Reader reader(path);
    if (reader.next_line() != kMagic) {
        throw LoadError("checkpoint '" + path.string() + "': bad magic line");
    }
    if (reader.expect("kind") != "transmeter") {
        throw LoadError("checkpoint '" + path.string() + "' is not a transmeter checkpoint");
    }
    TransmeterCheckpointMeta m;
    m.source_dataset = reader.expect("source_dataset");
    m.target_dataset = reader.expect("target_dataset");
    TransmeterModel model;
    model.d_s = std::stoul(reader.expect("d_s"));
    model.d_t = std::stoul(reader.expect("d_t"));
    model.alpha = parse_hex_double(reader.expect("alpha"));
    model.beta = parse_hex_double(reader.expect("beta"));
    m.flip = reader.expect("flip") == "1";
    m.seed = std::stoull(reader.expect("seed"));
    model.encoder = reader.read_network("encoder");
    model.decoder = reader.read_network("decoder");
    model.label_predictor = reader.read_network("label_predictor");
    model.domain_classifier = reader.read_network("domain_classifier");
    if (meta) *meta = m;
    return model;
}

}  // namespace transmeter
