// Copyright 2026 The Qgen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qgen/text/stopwords.h"

#include <algorithm>
#include <array>
#include <string_view>

namespace qgen::text {
namespace {

// Sorted; looked up with binary search. Keep sorted when editing.

constexpr auto kStopwords = std::to_array<std::string_view>({
    "a", "about", "above", "across", "actually", "after", "afterwards",
    "again", "against", "ago", "all", "almost", "alone", "along", "already",
    "also", "although", "always", "am", "among", "amongst", "an", "and",
    "another", "any", "anybody", "anyhow", "anyone", "anything", "anyway",
    "anywhere", "are", "aren't", "around", "as", "at", "back", "be",
    "became", "because", "become", "becomes", "becoming", "been", "before",
    "beforehand", "behind", "being", "below", "beside", "besides", "between",
    "beyond", "both", "but", "by", "can", "can't", "cannot", "could",
    "couldn't", "did", "didn't", "do", "does", "doesn't", "doing", "don't",
    "done", "down", "during", "each", "either", "else", "elsewhere",
    "enough", "etc", "even", "ever", "every", "everyone", "everything",
    "everywhere", "except", "few", "for", "former", "formerly", "from",
    "further", "get", "gets", "getting", "give", "given", "gives", "go",
    "goes", "going", "gone", "got", "had", "hadn't", "has", "hasn't", "have",
    "haven't", "having", "he", "he'd", "he'll", "he's", "hence", "her",
    "here", "here's", "hereafter", "hereby", "herein", "hers", "herself",
    "him", "himself", "his", "how", "how's", "however", "i", "i'd", "i'll",
    "i'm", "i've", "ie", "if", "in", "indeed", "instead", "into", "is",
    "isn't", "it", "it's", "its", "itself", "just", "keep", "kept", "last",
    "latter", "least", "less", "let", "let's", "like", "likely", "made",
    "make", "makes", "many", "may", "maybe", "me", "meanwhile", "might",
    "mine", "more", "moreover", "most", "mostly", "much", "must", "mustn't",
    "my", "myself", "namely", "neither", "never", "nevertheless", "next",
    "no", "nobody", "none", "nor", "not", "nothing", "now", "nowhere", "of",
    "off", "often", "on", "once", "one", "only", "onto", "or", "other",
    "others", "otherwise", "ought", "our", "ours", "ourselves", "out",
    "over", "own", "per", "perhaps", "please", "put", "quite", "rather",
    "really", "said", "same", "say", "says", "see", "seem", "seemed",
    "seeming", "seems", "several", "shall", "shan't", "she", "she'd",
    "she'll", "she's", "should", "shouldn't", "since", "so", "some",
    "somehow", "someone", "something", "sometime", "sometimes", "somewhere",
    "still", "such", "take", "than", "that", "that's", "the", "their",
    "theirs", "them", "themselves", "then", "thence", "there", "there's",
    "thereafter", "thereby", "therefore", "therein", "thereupon", "these",
    "they", "they'd", "they'll", "they're", "they've", "this", "those",
    "though", "through", "throughout", "thru", "thus", "to", "together",
    "too", "toward", "towards", "under", "unless", "until", "up", "upon",
    "us", "used", "using", "very", "via", "was", "wasn't", "we", "we'd",
    "we'll", "we're", "we've", "well", "were", "weren't", "what", "what's",
    "whatever", "when", "when's", "whence", "whenever", "where", "where's",
    "whereafter", "whereas", "whereby", "wherein", "whereupon", "wherever",
    "whether", "which", "while", "whither", "who", "who's", "whoever",
    "whole", "whom", "whose", "why", "why's", "will", "with", "within",
    "without", "won't", "would", "wouldn't", "yet", "you", "you'd",
    "you'll", "you're", "you've", "your", "yours", "yourself",
    "yourselves",
});

}  // namespace

bool IsStopword(std::string_view normalized_word) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(),
                            normalized_word);
}

std::span<const std::string_view> Stopwords() { return kStopwords; }

}  // namespace qgen::text
