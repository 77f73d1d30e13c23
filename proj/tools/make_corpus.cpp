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

// Writes the fixture corpus (64 natural-image derivatives plus manifest.json)
// used by the tests and by `objblur bench`.

#include <cstdlib>
#include <iostream>
#include <string>

#include "corpus.hpp"

int main(int argc, char** argv)
{
    if (argc < 2)
    {
        std::cerr << "usage: objblur_make_corpus <dir> [images]\n";
        return 2;
    }
    objblur::fixtures::CorpusOptions options;
    if (argc > 2)
    {
        options.images = std::strtoul(argv[2], nullptr, 10);
    }
    std::cout << objblur::fixtures::write_corpus(argv[1], options).string() << "\n";
    return 0;
}
