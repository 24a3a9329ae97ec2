#include <gtest/gtest.h>

#include <filesystem>
#include <string>
#include <vector>

#include "bucb/svg_plot.hpp"

using namespace bucb;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

std::filesystem::path write_csv(const std::string& name, const std::string& body) {
    auto p = std::filesystem::temp_directory_path() / ("bucb_plot_" + name);
    write_text_file(p, body);
    return p;
}

const std::string kHeader = "d,l_hat,stderr,reps,a,J,M,K,N,seed\n";

}  // namespace

TEST(SvgPlot, SinglePointHasOneMarker) {
    auto in = write_csv("one.csv", kHeader + "0,0,0,100,0.33333333333333331,2,1,100,100,42\n");
    auto out = std::filesystem::temp_directory_path() / "bucb_plot_one.svg";
    std::vector<std::filesystem::path> inputs{in};
    emit_plot(inputs, out);
    const std::string svg = read_text_file(out);
    EXPECT_EQ(count(svg, "<circle"), 1u);
    EXPECT_EQ(count(svg, "<polyline"), 1u);
    EXPECT_NE(svg.find("N=100"), std::string::npos);
    EXPECT_NE(svg.find(">d</text>"), std::string::npos);
    EXPECT_NE(svg.find("scaled loss l(d)"), std::string::npos);
    EXPECT_EQ(svg.find("href"), std::string::npos);
    EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(SvgPlot, ThreeSeriesThreeLegendEntries) {
    std::vector<std::filesystem::path> inputs;
    for (int n : {100, 400, 1500}) {
        std::string body = kHeader;
        for (int i = 0; i < 5; ++i) {
            body += std::to_string(i) + ",0." + std::to_string(i + 1) + ",0.01,100,0.3,2,1," + std::to_string(n) +
                    "," + std::to_string(n) + ",1\n";
        }
        inputs.push_back(write_csv("s" + std::to_string(n) + ".csv", body));
    }
    auto out = std::filesystem::temp_directory_path() / "bucb_plot_three.svg";
    emit_plot(inputs, out);
    const std::string svg = read_text_file(out);
    EXPECT_EQ(count(svg, "<polyline"), 3u);
    EXPECT_EQ(count(svg, "<circle"), 15u);
    EXPECT_EQ(count(svg, "class=\"whisker\""), 15u);
    for (const char* label : {"N=100<", "N=400<", "N=1500<"}) EXPECT_EQ(count(svg, label), 1u) << label;
}

TEST(SvgPlot, MalformedCsvReportsLine) {
    auto in = write_csv("bad.csv", kHeader + "0,0,0,100,0.3,2,1,100,100,42\nnot,a,row\n");
    auto out = std::filesystem::temp_directory_path() / "bucb_plot_bad.svg";
    std::vector<std::filesystem::path> inputs{in};
    try {
        emit_plot(inputs, out);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("bad.csv"), std::string::npos);
    }
}
