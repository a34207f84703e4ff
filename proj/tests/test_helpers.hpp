#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "esgsent/corpus.hpp"
#include "esgsent/fileio.hpp"

namespace esg::test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
  public:
    TempDir() {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() / ("esgsent-test-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

  private:
    std::filesystem::path path_;
};

inline Document make_doc(std::string id, std::string ts, std::string ticker = "HSBC",
                         std::string text = "sustainable growth", Source source = Source::Tweet) {
    Document d;
    d.id = std::move(id);
    d.source = source;
    d.timestamp = parse_timestamp(ts);
    d.ticker = std::move(ticker);
    d.text = std::move(text);
    return d;
}

inline std::filesystem::path source_dir() { return ESGSENT_SOURCE_DIR; }

}  // namespace esg::test
