#include "clu/crypto_task.hpp"

namespace clu {

namespace {

// 1,000 common English words, lowercase alphabetic, used by the dataset
// generator's default profile.
const char* const kWords[] = {
    "account", "acid", "action", "activity", "adventure", "age", "agency", "air",
    "alley", "altar", "american", "amount", "analysis", "anchor", "angel", "animal",
    "answer", "ant", "antler", "apple", "area", "arm", "arrival", "art",
    "article", "ash", "ask", "association", "atlas", "atom", "attack", "attention",
    "author", "autumn", "avenue", "baboon", "baby", "back", "badge", "badger",
    "bag", "ball", "bandage", "bank", "banner", "base", "basket", "bat",
    "battery", "beach", "beak", "bear", "beard", "beaver", "become", "bed",
    "bee", "beef", "beetle", "begin", "behavior", "believe", "belt", "bill",
    "bird", "bison", "bit", "blanket", "blood", "board", "boat", "body",
    "bone", "book", "boot", "border", "borrow", "bottle", "bowl", "box",
    "boy", "brain", "brake", "branch", "bread", "break", "breakfast", "brick",
    "bridge", "bring", "brush", "budget", "buffalo", "build", "building", "bull",
    "burn", "burrow", "business", "butter", "butterfly", "button", "buy", "cabin",
    "calendar", "calf", "call", "camel", "camera", "canary", "cancer", "candle",
    "canyon", "capital", "car", "care", "carnival", "carpet", "carry", "case",
    "castle", "catch", "cave", "cell", "center", "century", "ceremony", "chain",
    "chair", "chalk", "change", "chapel", "chapter", "cheek", "cheese", "cheetah",
    "chick", "chicken", "child", "chimp", "chin", "choose", "church", "cinema",
    "circuit", "circus", "city", "clam", "class", "claw", "clay", "cliff",
    "climb", "clinic", "clock", "close", "cloud", "clue", "coal", "coat",
    "cocoon", "cod", "code", "coffee", "coin", "collar", "collect", "college",
    "colony", "come", "comet", "community", "company", "compass", "computer", "concern",
    "control", "cook", "copper", "corner", "cost", "cottage", "cotton", "count",
    "country", "couple", "court", "cover", "cow", "crab", "crane", "crater",
    "crayon", "create", "creation", "cricket", "crime", "cross", "crow", "crown",
    "crystal", "culture", "cup", "curtain", "curve", "custom", "cut", "dance",
    "data", "dawn", "day", "deadline", "death", "debate", "decade", "decide",
    "decision", "deer", "deliver", "den", "dentist", "departure", "describe", "desert",
    "design", "destroy", "development", "diamond", "difference", "dig", "dinner", "director",
    "discover", "discovery", "disease", "district", "divide", "doctor", "dog", "dolphin",
    "donkey", "door", "dove", "dragon", "dragonfly", "draw", "drawing", "dream",
    "dress", "drink", "drive", "drop", "drought", "drug", "duck", "dusk",
    "dust", "eagle", "earn", "earthquake", "east", "eat", "echo", "economy",
    "education", "eel", "effect", "effort", "egg", "election", "elephant", "elk",
    "emblem", "empire", "emu", "end", "energy", "engine", "enjoy", "enter",
    "envelope", "environment", "era", "eraser", "escape", "evening", "event", "evidence",
    "experience", "explain", "eye", "eyebrow", "eyelash", "fabric", "face", "fact",
    "falcon", "fall", "family", "famine", "father", "feather", "feed", "feel",
    "feeling", "ferret", "festival", "fiber", "field", "fight", "figure", "fill",
    "film", "fin", "finch", "find", "finish", "fire", "fish", "fitness",
    "fix", "flag", "flame", "flood", "flower", "fly", "fold", "follow",
    "foot", "football", "force", "forehead", "forest", "forget", "forgive", "fork",
    "form", "fox", "freedom", "freeze", "friend", "frog", "frontier", "frown",
    "fruit", "fuel", "fur", "future", "galaxy", "gallery", "game", "garden",
    "gas", "gather", "germ", "gesture", "ghost", "giant", "gift", "gill",
    "giraffe", "girl", "give", "glacier", "glass", "globe", "glove", "glow",
    "goal", "goat", "gold", "goose", "gorilla", "government", "grab", "grant",
    "grass", "grasshopper", "ground", "group", "grow", "growth", "guess", "gull",
    "gun", "guy", "habit", "hair", "hammer", "hand", "handle", "hang",
    "happen", "harbor", "hat", "hate", "hawk", "head", "health", "hear",
    "heart", "hedgehog", "help", "hen", "hero", "heron", "herring", "hide",
    "hill", "hippo", "history", "hit", "hive", "hold", "holiday", "home",
    "hoof", "hope", "horizon", "horn", "horse", "hospital", "hotel", "hour",
    "house", "hunt", "hurry", "hut", "ice", "idea", "image", "index",
    "industry", "information", "insect", "instant", "interest", "invention", "invite", "involvement",
    "iron", "island", "issue", "item", "itself", "jacket", "jaguar", "jar",
    "job", "join", "journal", "journey", "jump", "keep", "key", "kick",
    "kidney", "kind", "king", "kingdom", "kiss", "kitchen", "knife", "knock",
    "know", "knowledge", "lab", "ladder", "lake", "lamb", "lamp", "land",
    "lane", "language", "larva", "laugh", "law", "leader", "leaf", "learn",
    "leather", "leave", "leg", "legend", "lemur", "lend", "leopard", "letter",
    "level", "life", "lift", "light", "line", "lion", "lip", "liquid",
    "listen", "live", "liver", "lizard", "llama", "lobster", "lock", "look",
    "lose", "lot", "love", "lunch", "lung", "machine", "magnet", "magpie",
    "make", "man", "manage", "mane", "map", "march", "market", "material",
    "matter", "measure", "meat", "medal", "medicine", "meet", "meeting", "melt",
    "member", "mention", "metal", "midnight", "military", "milk", "millennium", "mind",
    "mink", "minute", "mirror", "mission", "mix", "model", "mole", "moment",
    "money", "monkey", "month", "monument", "moon", "moose", "morning", "mosquito",
    "moth", "mother", "mountain", "mouse", "move", "movie", "mud", "mule",
    "muscle", "museum", "music", "mystery", "myth", "nail", "name", "nation",
    "nature", "need", "needle", "nerve", "nest", "network", "news", "night",
    "nod", "noon", "north", "notebook", "nothing", "notice", "novel", "number",
    "nurse", "obey", "ocean", "octopus", "offer", "office", "official", "oil",
    "open", "order", "ostrich", "others", "otter", "owl", "oyster", "package",
    "page", "paint", "painting", "palace", "panther", "paper", "parade", "parcel",
    "parent", "parrot", "part", "particle", "partridge", "party", "pass", "path",
    "patient", "pattern", "paw", "pay", "peacock", "pelican", "pencil", "penguin",
    "people", "pepper", "performance", "period", "person", "pheasant", "phone", "phrase",
    "pick", "picture", "piece", "pig", "pigeon", "pill", "pillow", "pilot",
    "place", "plague", "plan", "plane", "planet", "plant", "plate", "play",
    "player", "pocket", "poem", "point", "police", "policy", "pork", "port",
    "portrait", "position", "possum", "pour", "powder", "power", "practice", "prepare",
    "president", "press", "price", "print", "prize", "problem", "process", "product",
    "professor", "program", "project", "promise", "property", "protect", "prove", "province",
    "puffin", "pull", "purpose", "push", "put", "puzzle", "quail", "quality",
    "quest", "question", "rabbit", "raccoon", "radio", "rain", "raise", "rat",
    "rate", "raven", "reach", "read", "reason", "receive", "record", "recovery",
    "region", "relationship", "remember", "remove", "repair", "repeat", "reply", "report",
    "republic", "rescue", "research", "resource", "rest", "result", "return", "rhino",
    "rice", "riddle", "ride", "right", "ring", "rise", "risk", "ritual",
    "river", "road", "robe", "robin", "rock", "rocket", "role", "room",
    "rooster", "root", "rope", "route", "routine", "rule", "run", "saga",
    "sail", "salad", "salmon", "salt", "sand", "save", "say", "scale",
    "scarf", "schedule", "school", "science", "scream", "screw", "sea", "seal",
    "search", "season", "seat", "secret", "security", "see", "seed", "sell",
    "send", "sense", "serve", "service", "shade", "shadow", "shake", "share",
    "shark", "sheep", "shelf", "shell", "shelter", "shield", "shine", "ship",
    "shirt", "shoe", "shoot", "shoulder", "shout", "show", "shrew", "shrimp",
    "shrine", "side", "signal", "silence", "silk", "silver", "sing", "sit",
    "site", "situation", "sketch", "skill", "skin", "skunk", "sleep", "sleeve",
    "slide", "slope", "sloth", "slug", "smell", "smile", "smoke", "snail",
    "snake", "snow", "soap", "society", "sock", "solid", "son", "song",
    "sort", "sound", "soup", "source", "space", "sparrow", "speak", "spend",
    "spider", "spill", "spirit", "spoon", "sport", "spring", "squid", "squirrel",
    "staff", "stage", "stamp", "stand", "star", "start", "state", "statement",
    "statue", "stay", "steal", "steam", "step", "stick", "stock", "stomach",
    "stone", "stop", "stork", "storm", "story", "strategy", "street", "stretch",
    "strike", "structure", "student", "study", "success", "sugar", "suit", "summer",
    "sun", "support", "surgeon", "swan", "sweater", "swim", "switch", "sword",
    "symbol", "system", "table", "tablet", "tail", "take", "tale", "talk",
    "taste", "tax", "tea", "teach", "teacher", "team", "tear", "technology",
    "television", "tell", "temple", "tent", "tern", "test", "theater", "theory",
    "therapy", "thing", "think", "thread", "throat", "throne", "throw", "ticket",
    "tiger", "time", "tire", "title", "toad", "tongue", "tooth", "touch",
    "tour", "towel", "tower", "town", "track", "trade", "tradition", "trail",
    "train", "travel", "tree", "trial", "trophy", "trout", "truth", "tuna",
    "tunnel", "turkey", "turtle", "type", "uniform", "unit", "universe", "use",
    "vaccine", "valley", "value", "verse", "view", "village", "villain", "virus",
    "vision", "visit", "voice", "volcano", "vote", "voyage", "wall", "wallet",
    "walrus", "war", "wasp", "watch", "water", "wave", "way", "weapon",
    "weasel", "web", "week", "west", "whale", "wheel", "whisker", "whisper",
    "wife", "wind", "window", "wing", "wink", "winter", "wire", "wish",
    "witch", "wizard", "wolf", "woman", "wood", "wool", "word", "work",
    "worker", "world", "worm", "wrong", "year", "zebra", "zipper", "zone",
};

}  // namespace

const std::vector<std::string>& bundled_vocabulary() {
  static const std::vector<std::string> vocabulary(std::begin(kWords), std::end(kWords));
  return vocabulary;
}

}  // namespace clu
