#include "voctk/dump.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

#include "voctk/common.hpp"

namespace voctk {

using nlohmann::json;

void write_dump(const Dump& d, const std::string& path) {
    if (d.data.size() != d.rows * d.cols)
        throw validation_error("dump: data size does not match rows*cols");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);

    json header;
    header["kind"] = d.kind;
    header["rows"] = d.rows;
    header["cols"] = d.cols;
    header["dtype"] = "f32";
    for (const auto& [k, v] : d.extra) header[k] = v;
    std::string line = header.dump();
    out << line << "\n";

    // Assumes a little-endian host, as does the bundle blob writer.
    out.write(reinterpret_cast<const char*>(d.data.data()),
              static_cast<std::streamsize>(d.data.size() * sizeof(float)));
    if (!out) throw io_error("write failed: " + path);
}

Dump read_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open dump: " + path);
    std::string line;
    if (!std::getline(in, line)) throw io_error("dump missing header: " + path);

    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw validation_error("dump " + path + ": bad header: " + e.what());
    }

    Dump d;
    try {
        d.kind = header.at("kind").get<std::string>();
        d.rows = header.at("rows").get<std::size_t>();
        d.cols = header.at("cols").get<std::size_t>();
        if (header.at("dtype").get<std::string>() != "f32")
            throw validation_error("dump " + path + ": unsupported dtype");
    } catch (const json::exception& e) {
        throw validation_error("dump " + path + ": " + e.what());
    }
    for (auto it = header.begin(); it != header.end(); ++it) {
        if (it.key() == "kind" || it.key() == "rows" || it.key() == "cols" || it.key() == "dtype")
            continue;
        if (it->is_number()) d.extra[it.key()] = it->get<double>();
    }

    d.data.resize(d.rows * d.cols);
    in.read(reinterpret_cast<char*>(d.data.data()),
            static_cast<std::streamsize>(d.data.size() * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != d.data.size() * sizeof(float))
        throw io_error("dump truncated: " + path);
    return d;
}

} // namespace voctk
