#include "slicescale/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace slicescale {

namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
    throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

// Line reader that skips blanks and '#' comments and tracks line numbers.
class LineReader {
public:
    LineReader(std::istream& in, const std::string& name) : in_(in), name_(name) {}

    bool next(std::string& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            std::size_t i = line.find_first_not_of(" \t\r");
            if (i == std::string::npos || line[i] == '#') continue;
            out = line;
            return true;
        }
        return false;
    }

    std::string require(const std::string& what) {
        std::string line;
        if (!next(line)) fail(name_, lineno_, "unexpected end of file, expected " + what);
        return line;
    }

    int lineno() const { return lineno_; }

private:
    std::istream& in_;
    std::string name_;
    int lineno_ = 0;
};

bool is_json_path(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

SparseTensor tensor_from_json(std::istream& in, const std::string& name) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(name + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("dims") || !j.contains("entries"))
        throw ParseError(name + ": expected object with 'dims' and 'entries'");
    std::vector<int> dims = j["dims"].get<std::vector<int>>();
    std::vector<Entry> entries;
    for (const auto& pair : j["entries"]) {
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError(name + ": each entry must be [[indices...], value]");
        std::vector<int> idx = pair[0].get<std::vector<int>>();
        for (int& i : idx) --i;  // files are 1-based
        double v = pair[1].get<double>();
        if (!(v > 0.0))
            throw ParseError(name + ": entry values must be strictly positive");
        entries.push_back({std::move(idx), v});
    }
    try {
        return SparseTensor(std::move(dims), std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw ParseError(name + ": " + e.what());
    }
}

TargetSums targets_from_json(std::istream& in, const std::string& name) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(name + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("targets"))
        throw ParseError(name + ": expected object with 'targets'");
    TargetSums s;
    s.sums = j["targets"].get<std::vector<std::vector<double>>>();
    if (s.sums.empty()) throw ParseError(name + ": no target vectors");
    return s;
}

}  // namespace

SparseTensor parse_tensor_text(std::istream& in, const std::string& name) {
    LineReader rd(in, name);
    if (rd.require("'tensor v1' header") != "tensor v1")
        fail(name, rd.lineno(), "expected 'tensor v1' header");

    auto read_kv = [&](const std::string& key) {
        std::istringstream ls(rd.require("'" + key + "' line"));
        std::string k;
        ls >> k;
        if (k != key) fail(name, rd.lineno(), "expected '" + key + "' line");
        return ls;
    };

    int d = 0;
    {
        auto ls = read_kv("modes");
        if (!(ls >> d) || d < 1) fail(name, rd.lineno(), "bad mode count");
    }
    std::vector<int> dims(d);
    {
        auto ls = read_kv("dims");
        for (int k = 0; k < d; ++k)
            if (!(ls >> dims[k]) || dims[k] < 1) fail(name, rd.lineno(), "bad dims line");
    }
    long long nnz = 0;
    {
        auto ls = read_kv("nnz");
        if (!(ls >> nnz) || nnz < 0) fail(name, rd.lineno(), "bad nnz line");
    }
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(nnz));
    for (long long e = 0; e < nnz; ++e) {
        std::istringstream ls(rd.require("entry line"));
        Entry ent;
        ent.idx.resize(d);
        for (int k = 0; k < d; ++k) {
            if (!(ls >> ent.idx[k])) fail(name, rd.lineno(), "bad entry indices");
            --ent.idx[k];  // file is 1-based
        }
        if (!(ls >> ent.value)) fail(name, rd.lineno(), "bad entry value");
        if (!(ent.value > 0.0))
            fail(name, rd.lineno(), "entry values must be strictly positive");
        entries.push_back(std::move(ent));
    }
    try {
        return SparseTensor(std::move(dims), std::move(entries));
    } catch (const std::invalid_argument& e) {
        fail(name, rd.lineno(), e.what());
    }
}

TargetSums parse_targets_text(std::istream& in, const std::string& name) {
    LineReader rd(in, name);
    if (rd.require("'targets v1' header") != "targets v1")
        fail(name, rd.lineno(), "expected 'targets v1' header");
    TargetSums s;
    std::string line;
    while (rd.next(line)) {
        std::istringstream ls(line);
        std::vector<double> vec;
        double v;
        while (ls >> v) vec.push_back(v);
        if (vec.empty() || !ls.eof()) fail(name, rd.lineno(), "bad target line");
        s.sums.push_back(std::move(vec));
    }
    if (s.sums.empty()) fail(name, rd.lineno(), "no target vectors");
    return s;
}

SparseTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return is_json_path(path) ? tensor_from_json(in, path) : parse_tensor_text(in, path);
}

TargetSums load_targets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return is_json_path(path) ? targets_from_json(in, path) : parse_targets_text(in, path);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_tensor(std::ostream& out, const SparseTensor& t) {
    out << "tensor v1\n";
    out << "modes " << t.num_modes() << "\n";
    out << "dims";
    for (int m : t.dims()) out << " " << m;
    out << "\nnnz " << t.nnz() << "\n";
    for (const Entry& e : t.entries()) {
        for (int i : e.idx) out << i + 1 << " ";
        out << format_double(e.value) << "\n";
    }
}

void write_targets(std::ostream& out, const TargetSums& s) {
    write_mode_vectors(out, "targets v1", s.sums);
}

void write_mode_vectors(std::ostream& out, const std::string& header,
                        const std::vector<std::vector<double>>& vecs) {
    out << header << "\n";
    for (const auto& v : vecs) {
        for (std::size_t i = 0; i < v.size(); ++i)
            out << (i ? " " : "") << format_double(v[i]);
        out << "\n";
    }
}

void save_tensor(const std::string& path, const SparseTensor& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    write_tensor(out, t);
}

void save_targets(const std::string& path, const TargetSums& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    write_targets(out, s);
}

}  // namespace slicescale
