/*******************************************************************************
* Copyright 2026 The objblur Authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*******************************************************************************/

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "objblur/cli.hpp"
#include "objblur/digest.hpp"
#include "objblur/image_io.hpp"

using namespace objblur;
namespace fs = std::filesystem;

namespace {

struct Result
{
    int code = -1;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "objblur");
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = cli::run(args, out, err);
    r.out  = out.str();
    r.err  = err.str();
    return r;
}

std::string line_starting(const std::string& text, const std::string& prefix)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        if (line.rfind(prefix, 0) == 0)
        {
            return line.substr(prefix.size());
        }
    }
    return {};
}

/// Splits a POSIX-shell-like line with single quotes only.
std::vector<std::string> split_words(const std::string& line)
{
    std::vector<std::string> words;
    std::string cur;
    bool quoted = false;
    bool any    = false;
    for (char c : line)
    {
        if (c == '\'')
        {
            quoted = !quoted;
            any    = true;
        }
        else if (c == ' ' && !quoted)
        {
            if (any)
            {
                words.push_back(cur);
            }
            cur.clear();
            any = false;
        }
        else
        {
            cur += c;
            any = true;
        }
    }
    if (any)
    {
        words.push_back(cur);
    }
    return words;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const fs::path& corpus()
{
    static const fs::path manifest = [] {
        fixtures::CorpusOptions o;
        o.images = 16;
        return fixtures::write_corpus(fixtures::scratch_dir("cli_corpus"), o);
    }();
    return manifest;
}

} // namespace

TEST_CASE("no subcommand and unknown flags are usage errors")
{
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"schedule", "--bogus"}).code == 2);
    const auto r = invoke({"augment", "--out", "/tmp/x"});
    CHECK(r.code == 2);
    CHECK(r.err.find("usage error:") != std::string::npos);
    CHECK(r.err.find("--manifest") != std::string::npos);
}

TEST_CASE("help exits 0")
{
    const auto r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(invoke({"augment", "--help"}).code == 0);
}

TEST_CASE("schedule writes the expected linear table")
{
    const fs::path dir = fixtures::scratch_dir("cli_schedule");
    const auto r = invoke({"schedule", "--family", "linear", "--duration", "1", "--points", "3", "--steps", "2",
                           "--size", "128", "--start-res", "4", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("resolved: objblur schedule", 0) == 0);
    CHECK(slurp(dir / "linear.csv") == "t,tau,s,W_t,H_t\n0,0,1,4,4\n1,0.5,0.5,66,66\n2,1,0,128,128\n");
}

TEST_CASE("schedule none is identically zero")
{
    const fs::path dir = fixtures::scratch_dir("cli_schedule_none");
    REQUIRE(invoke({"schedule", "--family", "none", "--points", "11", "--out", dir.string()}).code == 0);
    std::istringstream in(slurp(dir / "none.csv"));
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line))
    {
        const auto fields = line.substr(line.find(',', line.find(',') + 1) + 1);
        CHECK(fields.rfind("0,128,128", 0) == 0);
        ++rows;
    }
    CHECK(rows == 11);
}

TEST_CASE("schedule all writes ten files")
{
    const fs::path dir = fixtures::scratch_dir("cli_schedule_all");
    REQUIRE(invoke({"schedule", "--family", "all", "--out", dir.string()}).code == 0);
    int files = 0;
    for (const auto& e : fs::directory_iterator(dir))
    {
        files += e.path().extension() == ".csv" ? 1 : 0;
    }
    CHECK(files == 10);
    CHECK(fs::exists(dir / "exp_-5.0.csv"));
    CHECK(fs::exists(dir / "step_8.csv"));
}

TEST_CASE("malformed schedule specs are usage errors")
{
    CHECK(invoke({"schedule", "--family", "step:1"}).code == 2);
    CHECK(invoke({"schedule", "--family", "exp:0"}).code == 2);
    CHECK(invoke({"augment", "--manifest", corpus().string(), "--out", "/tmp/x", "--schedule", "cosine"}).code == 2);
    CHECK(invoke({"augment", "--manifest", corpus().string(), "--out", "/tmp/x", "--variant", "mixup"}).code == 2);
}

TEST_CASE("validate reports planted violations")
{
    const fs::path dir = fixtures::scratch_dir("cli_validate");
    std::ofstream(dir / "m.json") << R"({"categories": [{"id": 1, "name": "a"}, {"id": 2, "name": "b"}],
 "images": [
  {"id": "ok", "file": "ok.png", "width": 100, "height": 100, "objects": [
     {"bbox": [0, 0, 30, 30], "category_id": 1}, {"bbox": [10, 10, 30, 30], "category_id": 1},
     {"bbox": [20, 20, 30, 30], "category_id": 2}, {"bbox": [1, 1, 5, 5], "category_id": 2}]},
  {"id": "few", "file": "few.png", "width": 100, "height": 100, "objects": [
     {"bbox": [0, 0, 30, 30], "category_id": 1}]}
 ]})";
    const auto r = invoke({"validate", "--manifest", (dir / "m.json").string()});
    CHECK(r.code == 0);
    CHECK(line_starting(r.out, "boxes removed by area rule: ") == "1");
    CHECK(line_starting(r.out, "dropped: ") == "1");
    CHECK(line_starting(r.out, "surviving: ") == "1");

    const auto clean = invoke({"validate", "--manifest", corpus().string()});
    CHECK(clean.code == 0);
    CHECK(line_starting(clean.out, "dropped: ") == "0");

    std::ofstream(dir / "empty.json") << R"({"categories": [], "images": []})";
    CHECK(invoke({"validate", "--manifest", (dir / "empty.json").string()}).code == 1);
    CHECK(invoke({"validate", "--manifest", (dir / "missing.json").string()}).code == 1);
}

TEST_CASE("augment with variant none reproduces the source images")
{
    const fs::path out = fixtures::scratch_dir("cli_none");
    const auto r       = invoke({"augment", "--manifest", corpus().string(), "--out", out.string(), "--variant",
                                 "none", "--steps", "2", "--batch-size", "8"});
    REQUIRE(r.code == 0);
    CHECK(line_starting(r.out, "delivered: ") == "16");
    const fs::path images = corpus().parent_path() / "images";
    int compared          = 0;
    for (const auto& e : fs::directory_iterator(out))
    {
        if (e.path().extension() != ".png")
        {
            continue;
        }
        const std::string name = e.path().filename().string();
        const std::string id   = name.substr(0, name.find("_t"));
        CHECK(io::load(e.path()) == io::load(images / (id + ".png")));
        ++compared;
    }
    CHECK(compared == 16);
}

TEST_CASE("the resolved line replays to the same digest")
{
    const fs::path out = fixtures::scratch_dir("cli_replay");
    const auto first   = invoke({"augment", "--manifest", corpus().string(), "--out", out.string(), "--steps", "4",
                                 "--seed", "9", "--schedule", "exp:-5.0"});
    REQUIRE(first.code == 0);
    const std::string resolved = line_starting(first.out, "resolved: ");
    auto words                 = split_words(resolved);
    REQUIRE(words.size() > 2);
    REQUIRE(words[0] == "objblur");
    words.erase(words.begin());
    const auto second = invoke(words);
    REQUIRE(second.code == 0);
    CHECK(line_starting(second.out, "resolved: ") == resolved);
    CHECK(line_starting(second.out, "digest: ") == line_starting(first.out, "digest: "));
    CHECK(line_starting(first.out, "digest: ").size() == 64);
}

TEST_CASE("config files supply flags and the command line overrides them")
{
    const fs::path dir = fixtures::scratch_dir("cli_config");
    std::ofstream(dir / "c.json") << R"({"manifest": ")" << corpus().string()
                                  << R"(", "steps": 2, "batch_size": 4, "variant": "fullblur", "seed": 5})";
    const auto r = invoke({"augment", "--config", (dir / "c.json").string(), "--out", (dir / "o").string(),
                           "--variant", "cutblur"});
    REQUIRE(r.code == 0);
    const std::string resolved = line_starting(r.out, "resolved: ");
    CHECK(resolved.find("--variant cutblur") != std::string::npos);
    CHECK(resolved.find("--batch-size 4") != std::string::npos);
    CHECK(line_starting(r.out, "delivered: ") == "8");

    std::ofstream(dir / "bad.json") << R"({"p_obj": 3.0})";
    CHECK(invoke({"augment", "--config", (dir / "bad.json").string(), "--manifest", corpus().string(), "--out",
                  (dir / "o2").string()})
              .code == 2);
}

TEST_CASE("preview renders both branches per step")
{
    const fs::path out = fixtures::scratch_dir("cli_preview");
    const auto r = invoke({"preview", "--manifest", corpus().string(), "--image-id", "img002", "--at", "0", "100",
                           "200", "--out", out.string()});
    REQUIRE(r.code == 0);
    int pngs = 0;
    for (const auto& e : fs::directory_iterator(out))
    {
        pngs += e.path().extension() == ".png" ? 1 : 0;
    }
    CHECK(pngs == 6);
    CHECK(invoke({"preview", "--manifest", corpus().string(), "--image-id", "nope", "--at", "0", "--out",
                  out.string()})
              .code != 0);
}

TEST_CASE("bench with zero seconds prints an empty report")
{
    const auto r = invoke({"bench", "--manifest", corpus().string(), "--seconds", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("empty report") != std::string::npos);
}
