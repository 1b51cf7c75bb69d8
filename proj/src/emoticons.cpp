#include "tweetsent/emoticons.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "tweetsent/common.hpp"
#include "tweetsent/ingest.hpp"

namespace tweetsent {

Polarity polarity_of(Emotion e) {
  switch (e) {
    case Emotion::Joy:
    case Emotion::Surprise:
      return Polarity::Positive;
    default:
      return Polarity::Negative;
  }
}

std::string_view to_string(Polarity p) {
  return p == Polarity::Positive ? "positive" : "negative";
}

std::string_view to_string(Emotion e) {
  switch (e) {
    case Emotion::Joy: return "joy";
    case Emotion::Surprise: return "surprise";
    case Emotion::Sad: return "sad";
    case Emotion::Fear: return "fear";
    case Emotion::Anger: return "anger";
    case Emotion::Disgust: return "disgust";
  }
  return "?";
}

std::optional<Polarity> polarity_from_string(std::string_view s) {
  std::string t = to_lower_ascii(s);
  if (t == "positive" || t == "pos") return Polarity::Positive;
  if (t == "negative" || t == "neg") return Polarity::Negative;
  return std::nullopt;
}

std::optional<Emotion> emotion_from_string(std::string_view s) {
  std::string t = to_lower_ascii(s);
  if (t == "joy") return Emotion::Joy;
  if (t == "surprise") return Emotion::Surprise;
  if (t == "sad" || t == "sadness") return Emotion::Sad;
  if (t == "fear") return Emotion::Fear;
  if (t == "anger") return Emotion::Anger;
  if (t == "disgust") return Emotion::Disgust;
  return std::nullopt;
}

void EmoticonLexicon::add(char32_t cp, Emotion e, std::string description) {
  auto it = index_.find(cp);
  if (it != index_.end()) {
    throw DataError("duplicate lexicon entry for " + codepoint_to_string(cp));
  }
  index_[cp] = entries_.size();
  entries_.push_back(Entry{cp, e, std::move(description)});
}

std::optional<Emotion> EmoticonLexicon::emotion_of(char32_t cp) const {
  auto it = index_.find(cp);
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].emotion;
}

const std::string* EmoticonLexicon::description_of(char32_t cp) const {
  auto it = index_.find(cp);
  if (it == index_.end()) return nullptr;
  return &entries_[it->second].description;
}

const EmoticonLexicon& EmoticonLexicon::builtin() {
  static const EmoticonLexicon lex = [] {
    EmoticonLexicon l;
    l.add(0x1F600, Emotion::Joy, "grinning face");
    l.add(0x1F602, Emotion::Joy, "face with tears of joy");
    l.add(0x1F603, Emotion::Joy, "smiling face with open mouth");
    l.add(0x1F604, Emotion::Joy, "smiling face with open mouth and open eyes");
    l.add(0x1F605, Emotion::Joy, "smiling face with open mouth and cold sweat");
    l.add(0x1F606, Emotion::Joy,
          "smiling face with open mouth and tightly-closed eyes");
    l.add(0x1F60A, Emotion::Joy, "smiling face with smiling eyes");
    l.add(0x1F60D, Emotion::Joy, "smiling face with heart-shaped eyes");
    l.add(0x1F632, Emotion::Surprise, "astonished face");
    l.add(0x1F62E, Emotion::Surprise, "face with open mouth");
    l.add(0x1F62F, Emotion::Surprise, "hushed face");
    l.add(0x1F613, Emotion::Sad, "face with cold sweat");
    l.add(0x1F614, Emotion::Sad, "pensive face");
    l.add(0x1F61E, Emotion::Sad, "disappointed face");
    l.add(0x1F622, Emotion::Sad, "crying face");
    l.add(0x1F62D, Emotion::Sad, "loudly crying face");
    l.add(0x1F623, Emotion::Sad, "persevering face");
    l.add(0x1F620, Emotion::Anger, "angry face");
    l.add(0x1F621, Emotion::Anger, "pouting face");
    l.add(0x1F624, Emotion::Anger, "face with look of triumph");
    l.add(0x1F628, Emotion::Fear, "fearful face");
    l.add(0x1F631, Emotion::Fear, "face screaming in fear");
    l.add(0x1F62C, Emotion::Disgust, "grimacing face");
    return l;
  }();
  return lex;
}

EmoticonLexicon EmoticonLexicon::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon file: " + path.string());
  EmoticonLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t t1 = line.find('\t');
    if (t1 == std::string::npos) {
      throw DataError("lexicon line " + std::to_string(lineno) +
                      ": expected tab-separated fields");
    }
    std::size_t t2 = line.find('\t', t1 + 1);
    std::string cp_str = line.substr(0, t1);
    std::string emo_str = t2 == std::string::npos
                              ? line.substr(t1 + 1)
                              : line.substr(t1 + 1, t2 - t1 - 1);
    std::string desc = t2 == std::string::npos ? "" : line.substr(t2 + 1);
    auto emo = emotion_from_string(emo_str);
    if (!emo) {
      throw DataError("lexicon line " + std::to_string(lineno) +
                      ": unknown emotion '" + emo_str + "'");
    }
    lex.add(codepoint_from_string(cp_str), *emo, std::move(desc));
  }
  return lex;
}

void EmoticonLexicon::write(std::ostream& out) const {
  for (const Entry& e : entries_) {
    out << codepoint_to_string(e.codepoint) << '\t' << to_string(e.emotion)
        << '\t' << e.description << '\n';
  }
}

WeakLabel weak_label(std::span<const char32_t> emoticons,
                     const EmoticonLexicon& lexicon) {
  bool any = false;
  bool pos = false, neg = false;
  bool single_emotion = true;
  Emotion first{};
  for (char32_t cp : emoticons) {
    auto e = lexicon.emotion_of(cp);
    if (!e) continue;
    if (!any) {
      first = *e;
      any = true;
    } else if (*e != first) {
      single_emotion = false;
    }
    (polarity_of(*e) == Polarity::Positive ? pos : neg) = true;
  }
  WeakLabel label;
  if (!any) {
    label.kind = WeakLabel::Kind::NoEmoticon;
  } else if (pos && neg) {
    label.kind = WeakLabel::Kind::Mixed;
  } else if (single_emotion) {
    label.kind = WeakLabel::Kind::SingleEmotion;
    label.emotion = first;
    label.polarity = polarity_of(first);
  } else {
    label.kind = WeakLabel::Kind::PolarityOnly;
    label.polarity = pos ? Polarity::Positive : Polarity::Negative;
  }
  return label;
}

CorpusPartition partition_corpus(std::span<const TweetRecord> records,
                                 const EmoticonLexicon& lexicon) {
  CorpusPartition part;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    WeakLabel label = r.emoticons
                          ? weak_label(*r.emoticons, lexicon)
                          : WeakLabel{};
    switch (label.kind) {
      case WeakLabel::Kind::NoEmoticon:
        part.no_emoticon.push_back(i);
        break;
      case WeakLabel::Kind::Mixed:
        part.mixed.push_back(i);
        break;
      default:
        (label.polarity == Polarity::Positive ? part.positive : part.negative)
            .push_back(i);
        break;
    }
  }
  return part;
}

}  // namespace tweetsent
