#pragma once

#include <qrho/errors.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace qrho::io {

// Fixed 17-significant-digit scientific formatting: identical inputs give
// byte-identical files.
inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns)
        : path_(path) {
        f_ = std::fopen(path.c_str(), "w");
        if (!f_) throw Error("cannot open output file " + path);
        for (size_t i = 0; i < columns.size(); ++i)
            std::fprintf(f_, "%s%s", i ? "," : "", columns[i].c_str());
        std::fprintf(f_, "\n");
    }
    ~CsvWriter() {
        if (f_) std::fclose(f_);
    }
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values) {
        for (size_t i = 0; i < values.size(); ++i)
            std::fprintf(f_, "%s%s", i ? "," : "", format_value(values[i]).c_str());
        std::fprintf(f_, "\n");
    }

    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::FILE* f_ = nullptr;
};

}  // namespace qrho::io
