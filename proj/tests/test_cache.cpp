#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cover2/numtheory.hpp"

// Runs in its own process: the cache location is read once, on first use.
TEST(ZsigmondyCache, PersistsAndReloadsPlainText) {
  const auto dir = std::filesystem::temp_directory_path() / ("cover2_cache_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  // A planted entry is trusted verbatim, which shows the file is consulted.
  {
    std::ofstream out(dir / "zsigmondy.txt");
    out << "3 5: 7\n";
  }
  ::setenv("COVER2_CACHE_DIR", dir.c_str(), 1);
  auto planted = cover2::zsigmondy_set(3, 5);
  ASSERT_EQ(planted.size(), 1u);
  EXPECT_EQ(planted[0], 7);

  auto fresh = cover2::zsigmondy_set(2, 12);
  ASSERT_EQ(fresh.size(), 1u);
  EXPECT_EQ(fresh[0], 13);
  std::ifstream in(dir / "zsigmondy.txt");
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(all.find("2 12: 13"), std::string::npos);
  std::filesystem::remove_all(dir);
}
