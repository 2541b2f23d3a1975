#include "envs/envs.hpp"

namespace when2tool::envs {

namespace {

struct Pair {
    const char* subject;
    const char* answer;
};

FactEntry make_fact(const std::string& category, const Pair& p) {
    const std::string s = p.subject, a = p.answer;
    FactEntry f;
    f.category = category;
    f.subject = s;
    f.answer = a;
    if (category == "capital") {
        f.question = "What is the capital of " + s + "?";
        f.title = "Capital of " + s;
        f.content = a + " is the capital city of " + s + ".";
    } else if (category == "symbol") {
        f.question = "What is the chemical symbol for " + s + "?";
        f.title = "Chemical symbol of " + s;
        f.content = "The chemical element " + s + " has the symbol " + a + ".";
    } else if (category == "author") {
        f.question = "Who wrote " + s + "?";
        f.title = "Author of " + s;
        f.content = s + " was written by " + a + ".";
    } else {
        throw std::logic_error("unknown fact category " + category);
    }
    return f;
}

void append(std::vector<FactEntry>& out, const std::string& category, std::initializer_list<Pair> pairs) {
    for (const auto& p : pairs) out.push_back(make_fact(category, p));
}

YearFact make_year(const char* event, const char* question, int year) {
    return YearFact{event, year, question, std::string(event) + " took place in " + std::to_string(year) + "."};
}

RuleFact make_rule(const char* game, const char* attribute, long long value) {
    const std::string g = game, a = attribute;
    return RuleFact{g, a, value, "In " + g + ", how many " + a + " are there?",
                    "In " + g + ", the number of " + a + " is " + std::to_string(value) + "."};
}

}  // namespace

const std::vector<FactEntry>& retriever_easy_pool() {
    static const std::vector<FactEntry> pool = [] {
        std::vector<FactEntry> v;
        append(v, "capital",
               {{"France", "Paris"},           {"Germany", "Berlin"},       {"Italy", "Rome"},
                {"Spain", "Madrid"},           {"Japan", "Tokyo"},          {"China", "Beijing"},
                {"Russia", "Moscow"},          {"the United Kingdom", "London"}, {"Egypt", "Cairo"},
                {"Canada", "Ottawa"},          {"Australia", "Canberra"},   {"Brazil", "Brasilia"},
                {"Argentina", "Buenos Aires"}, {"Mexico", "Mexico City"},   {"India", "New Delhi"},
                {"Greece", "Athens"},          {"Portugal", "Lisbon"},      {"Ireland", "Dublin"},
                {"Norway", "Oslo"},            {"Sweden", "Stockholm"},     {"Finland", "Helsinki"},
                {"Denmark", "Copenhagen"},     {"Poland", "Warsaw"},        {"Austria", "Vienna"},
                {"the Netherlands", "Amsterdam"}, {"Belgium", "Brussels"},  {"Switzerland", "Bern"},
                {"Turkey", "Ankara"},          {"South Korea", "Seoul"},    {"Thailand", "Bangkok"},
                {"Kenya", "Nairobi"},          {"Peru", "Lima"},            {"Chile", "Santiago"},
                {"Cuba", "Havana"},            {"Hungary", "Budapest"},     {"the Czech Republic", "Prague"},
                {"Indonesia", "Jakarta"},      {"the Philippines", "Manila"}, {"Vietnam", "Hanoi"},
                {"Iran", "Tehran"},            {"Iraq", "Baghdad"},         {"Saudi Arabia", "Riyadh"},
                {"Colombia", "Bogota"},        {"Venezuela", "Caracas"},    {"Ukraine", "Kyiv"}});
        append(v, "symbol",
               {{"Hydrogen", "H"}, {"Helium", "He"},   {"Carbon", "C"},    {"Nitrogen", "N"},   {"Oxygen", "O"},
                {"Sodium", "Na"},  {"Iron", "Fe"},     {"Gold", "Au"},     {"Silver", "Ag"},    {"Copper", "Cu"},
                {"Calcium", "Ca"}, {"Chlorine", "Cl"}, {"Potassium", "K"}, {"Magnesium", "Mg"}, {"Zinc", "Zn"},
                {"Lead", "Pb"},    {"Sulfur", "S"},    {"Neon", "Ne"},     {"Aluminium", "Al"}, {"Uranium", "U"}});
        append(v, "author",
               {{"Romeo and Juliet", "William Shakespeare"},
                {"Pride and Prejudice", "Jane Austen"},
                {"Nineteen Eighty-Four", "George Orwell"},
                {"War and Peace", "Leo Tolstoy"},
                {"The Odyssey", "Homer"},
                {"Don Quixote", "Miguel de Cervantes"},
                {"Moby-Dick", "Herman Melville"},
                {"Hamlet", "William Shakespeare"},
                {"Oliver Twist", "Charles Dickens"},
                {"Frankenstein", "Mary Shelley"}});
        return v;
    }();
    return pool;
}

const std::vector<FactEntry>& retriever_medium_pool() {
    static const std::vector<FactEntry> pool = [] {
        std::vector<FactEntry> v;
        append(v, "capital",
               {{"Mongolia", "Ulaanbaatar"},    {"Kazakhstan", "Astana"},     {"Uzbekistan", "Tashkent"},
                {"Kyrgyzstan", "Bishkek"},      {"Tajikistan", "Dushanbe"},   {"Turkmenistan", "Ashgabat"},
                {"Azerbaijan", "Baku"},         {"Georgia", "Tbilisi"},       {"Armenia", "Yerevan"},
                {"Bhutan", "Thimphu"},          {"Nepal", "Kathmandu"},       {"Laos", "Vientiane"},
                {"Myanmar", "Naypyidaw"},       {"Cambodia", "Phnom Penh"},   {"Brunei", "Bandar Seri Begawan"},
                {"Burkina Faso", "Ouagadougou"}, {"Mali", "Bamako"},          {"Niger", "Niamey"},
                {"Chad", "N'Djamena"},          {"Eritrea", "Asmara"},        {"Madagascar", "Antananarivo"},
                {"Malawi", "Lilongwe"},         {"Zambia", "Lusaka"},         {"Zimbabwe", "Harare"},
                {"Botswana", "Gaborone"},       {"Namibia", "Windhoek"},      {"Mozambique", "Maputo"},
                {"Rwanda", "Kigali"},           {"Uganda", "Kampala"},        {"Gabon", "Libreville"},
                {"Mauritania", "Nouakchott"},   {"Paraguay", "Asuncion"},     {"Uruguay", "Montevideo"},
                {"Ecuador", "Quito"},           {"Honduras", "Tegucigalpa"},  {"Nicaragua", "Managua"},
                {"Suriname", "Paramaribo"},     {"Guyana", "Georgetown"},     {"Moldova", "Chisinau"},
                {"Slovenia", "Ljubljana"},      {"Slovakia", "Bratislava"},   {"Latvia", "Riga"},
                {"Lithuania", "Vilnius"},       {"Estonia", "Tallinn"},       {"Iceland", "Reykjavik"},
                {"Albania", "Tirana"},          {"North Macedonia", "Skopje"}, {"Montenegro", "Podgorica"},
                {"Fiji", "Suva"},               {"Samoa", "Apia"},            {"Vanuatu", "Port Vila"}});
        append(v, "symbol",
               {{"Tin", "Sn"},       {"Tungsten", "W"},   {"Antimony", "Sb"}, {"Mercury", "Hg"},  {"Bismuth", "Bi"},
                {"Cobalt", "Co"},    {"Manganese", "Mn"}, {"Platinum", "Pt"}, {"Strontium", "Sr"}, {"Selenium", "Se"},
                {"Xenon", "Xe"},     {"Krypton", "Kr"},   {"Titanium", "Ti"}, {"Chromium", "Cr"}, {"Arsenic", "As"}});
        append(v, "author",
               {{"One Hundred Years of Solitude", "Gabriel Garcia Marquez"},
                {"The Brothers Karamazov", "Fyodor Dostoevsky"},
                {"Middlemarch", "George Eliot"},
                {"The Tale of Genji", "Murasaki Shikibu"},
                {"Madame Bovary", "Gustave Flaubert"},
                {"The Master and Margarita", "Mikhail Bulgakov"},
                {"Things Fall Apart", "Chinua Achebe"},
                {"The Magic Mountain", "Thomas Mann"},
                {"Beloved", "Toni Morrison"},
                {"Dead Souls", "Nikolai Gogol"}});
        return v;
    }();
    return pool;
}

const std::vector<YearFact>& year_easy_pool() {
    static const std::vector<YearFact> pool{
        make_year("Apollo 11 Moon landing", "What year did humans first land on the Moon?", 1969),
        make_year("Fall of the Berlin Wall", "What year did the Berlin Wall fall?", 1989),
        make_year("Outbreak of World War I", "What year did World War I begin?", 1914),
        make_year("End of World War II", "What year did World War II end?", 1945),
        make_year("Outbreak of World War II", "What year did World War II begin?", 1939),
        make_year("United States Declaration of Independence", "What year was the United States Declaration of Independence signed?", 1776),
        make_year("Sinking of the Titanic", "What year did the Titanic sink?", 1912),
        make_year("Storming of the Bastille", "What year was the Bastille stormed?", 1789),
        make_year("Columbus's first voyage to the Americas", "What year did Columbus first reach the Americas?", 1492),
        make_year("Dissolution of the Soviet Union", "What year was the Soviet Union dissolved?", 1991),
        make_year("Attack on Pearl Harbor", "What year was Pearl Harbor attacked?", 1941),
        make_year("Assassination of John F. Kennedy", "What year was John F. Kennedy assassinated?", 1963),
        make_year("Wright brothers' first powered flight", "What year did the Wright brothers make their first powered flight?", 1903),
        make_year("Sealing of the Magna Carta", "What year was the Magna Carta sealed?", 1215),
        make_year("Battle of Hastings", "What year was the Battle of Hastings fought?", 1066),
        make_year("September 11 attacks", "What year did the September 11 attacks take place?", 2001),
        make_year("Launch of Sputnik 1", "What year was Sputnik 1 launched?", 1957),
        make_year("Wall Street Crash", "What year did the Wall Street Crash occur?", 1929),
        make_year("October Revolution in Russia", "What year did the October Revolution take place in Russia?", 1917),
        make_year("Battle of Waterloo", "What year was the Battle of Waterloo fought?", 1815),
        make_year("End of the American Civil War", "What year did the American Civil War end?", 1865),
        make_year("Outbreak of the American Civil War", "What year did the American Civil War begin?", 1861),
        make_year("Founding of the United Nations", "What year was the United Nations founded?", 1945),
        make_year("Chernobyl disaster", "What year did the Chernobyl disaster occur?", 1986),
        make_year("Release of Nelson Mandela", "What year was Nelson Mandela released from prison?", 1990),
        make_year("Publication of On the Origin of Species", "What year was Darwin's On the Origin of Species published?", 1859),
        make_year("First FIFA World Cup", "What year was the first FIFA World Cup held?", 1930),
        make_year("Yuri Gagarin's spaceflight", "What year did Yuri Gagarin become the first human in space?", 1961),
        make_year("Introduction of euro banknotes", "What year were euro banknotes and coins introduced?", 2002),
        make_year("Independence of India", "What year did India gain independence?", 1947),
        make_year("Founding of the People's Republic of China", "What year was the People's Republic of China founded?", 1949),
        make_year("Atomic bombing of Hiroshima", "What year was Hiroshima hit by an atomic bomb?", 1945),
        make_year("Signing of the Treaty of Versailles", "What year was the Treaty of Versailles signed?", 1919),
        make_year("First modern Olympic Games", "What year were the first modern Olympic Games held?", 1896),
        make_year("Assassination of Abraham Lincoln", "What year was Abraham Lincoln assassinated?", 1865),
        make_year("I Have a Dream speech", "What year did Martin Luther King Jr. deliver the I Have a Dream speech?", 1963),
        make_year("Fall of Constantinople", "What year did Constantinople fall to the Ottomans?", 1453),
        make_year("Ninety-five Theses", "What year did Martin Luther publish the Ninety-five Theses?", 1517),
        make_year("Defeat of the Spanish Armada", "What year was the Spanish Armada defeated?", 1588),
        make_year("Great Fire of London", "What year did the Great Fire of London occur?", 1666),
        make_year("Boston Tea Party", "What year did the Boston Tea Party take place?", 1773),
        make_year("Louisiana Purchase", "What year was the Louisiana Purchase made?", 1803),
        make_year("Coronation of Napoleon", "What year was Napoleon crowned Emperor of the French?", 1804),
        make_year("Battle of Gettysburg", "What year was the Battle of Gettysburg fought?", 1863),
        make_year("Opening of the Suez Canal", "What year did the Suez Canal open?", 1869),
        make_year("Opening of the Panama Canal", "What year did the Panama Canal open?", 1914),
        make_year("Discovery of penicillin", "What year did Alexander Fleming discover penicillin?", 1928),
        make_year("D-Day landings", "What year did the D-Day landings in Normandy take place?", 1944),
        make_year("Cuban Missile Crisis", "What year did the Cuban Missile Crisis occur?", 1962),
        make_year("Construction of the Berlin Wall", "What year was the Berlin Wall built?", 1961),
        make_year("Challenger disaster", "What year did the Space Shuttle Challenger disaster occur?", 1986),
        make_year("Launch of the Hubble Space Telescope", "What year was the Hubble Space Telescope launched?", 1990),
        make_year("Release of the first iPhone", "What year was the first iPhone released?", 2007),
        make_year("Coronation of Elizabeth II", "What year was Queen Elizabeth II crowned?", 1953),
        make_year("Death of Queen Victoria", "What year did Queen Victoria die?", 1901),
        make_year("Brexit referendum", "What year was the Brexit referendum held?", 2016),
        make_year("Indian Ocean tsunami", "What year did the Indian Ocean tsunami strike?", 2004),
        make_year("Publication of special relativity", "What year did Einstein publish the theory of special relativity?", 1905),
        make_year("Founding of Google", "What year was Google founded?", 1998),
        make_year("Birth of Dolly the sheep", "What year was Dolly the sheep born?", 1996),
        make_year("Completion of the Human Genome Project", "What year was the Human Genome Project completed?", 2003),
        make_year("Eruption of Mount Vesuvius that buried Pompeii", "What year did Mount Vesuvius bury Pompeii?", 79),
        make_year("Discovery of Tutankhamun's tomb", "What year was Tutankhamun's tomb discovered?", 1922),
        make_year("Ratification of the Nineteenth Amendment", "What year was the Nineteenth Amendment to the US Constitution ratified?", 1920),
        make_year("Fall of Saigon", "What year did Saigon fall?", 1975),
        make_year("Outbreak of the Korean War", "What year did the Korean War begin?", 1950),
        make_year("Signing of the Treaty of Rome", "What year was the Treaty of Rome signed?", 1957),
        make_year("Apollo 13 mission", "What year did the Apollo 13 mission fly?", 1970),
        make_year("Signing of the United States Constitution", "What year was the United States Constitution signed?", 1787),
        make_year("Battle of Trafalgar", "What year was the Battle of Trafalgar fought?", 1805),
        make_year("Ratification of the Thirteenth Amendment", "What year was the Thirteenth Amendment to the US Constitution ratified?", 1865),
        make_year("Great Chicago Fire", "What year did the Great Chicago Fire occur?", 1871),
        make_year("Eruption of Krakatoa", "What year did Krakatoa erupt catastrophically?", 1883),
        make_year("German reunification", "What year was Germany reunified?", 1990),
    };
    return pool;
}

const std::vector<YearFact>& year_medium_pool() {
    static const std::vector<YearFact> pool{
        make_year("Treaty of Tordesillas", "What year was the Treaty of Tordesillas signed?", 1494),
        make_year("Peace of Westphalia", "What year was the Peace of Westphalia concluded?", 1648),
        make_year("Treaty of Utrecht", "What year was the Treaty of Utrecht signed?", 1713),
        make_year("Congress of Vienna", "What year did the Congress of Vienna conclude?", 1815),
        make_year("Battle of Lepanto", "What year was the Battle of Lepanto fought?", 1571),
        make_year("Battle of Agincourt", "What year was the Battle of Agincourt fought?", 1415),
        make_year("Battle of Bannockburn", "What year was the Battle of Bannockburn fought?", 1314),
        make_year("Battle of Tours", "What year was the Battle of Tours fought?", 732),
        make_year("Battle of Plassey", "What year was the Battle of Plassey fought?", 1757),
        make_year("Battle of Adwa", "What year was the Battle of Adwa fought?", 1896),
        make_year("Battle of Tsushima", "What year was the Battle of Tsushima fought?", 1905),
        make_year("Battle of Ain Jalut", "What year was the Battle of Ain Jalut fought?", 1260),
        make_year("Glorious Revolution", "What year did the Glorious Revolution take place?", 1688),
        make_year("Edict of Nantes", "What year was the Edict of Nantes issued?", 1598),
        make_year("Revocation of the Edict of Nantes", "What year was the Edict of Nantes revoked?", 1685),
        make_year("Acts of Union between England and Scotland", "What year did the Acts of Union unite England and Scotland?", 1707),
        make_year("Treaty of Nanking", "What year was the Treaty of Nanking signed?", 1842),
        make_year("Meiji Restoration", "What year did the Meiji Restoration begin?", 1868),
        make_year("Outbreak of the Taiping Rebellion", "What year did the Taiping Rebellion begin?", 1850),
        make_year("Treaty of Paris ending the Seven Years' War", "What year was the Treaty of Paris that ended the Seven Years' War signed?", 1763),
        make_year("Diet of Worms", "What year was the Diet of Worms held?", 1521),
        make_year("Opening of the Council of Trent", "What year did the Council of Trent open?", 1545),
        make_year("Sack of Rome by imperial troops", "What year was Rome sacked by the troops of Charles V?", 1527),
        make_year("Proclamation of the Kingdom of Italy", "What year was the Kingdom of Italy proclaimed?", 1861),
        make_year("Proclamation of the German Empire", "What year was the German Empire proclaimed?", 1871),
        make_year("Opening of the Berlin Conference", "What year did the Berlin Conference on Africa open?", 1884),
        make_year("Haitian declaration of independence", "What year did Haiti declare independence?", 1804),
        make_year("Dissolution of the Holy Roman Empire", "What year was the Holy Roman Empire dissolved?", 1806),
        make_year("Treaty of Brest-Litovsk", "What year was the Treaty of Brest-Litovsk signed?", 1918),
        make_year("Treaty of Trianon", "What year was the Treaty of Trianon signed?", 1920),
        make_year("Treaty of Lausanne", "What year was the Treaty of Lausanne signed?", 1923),
        make_year("Kellogg-Briand Pact", "What year was the Kellogg-Briand Pact signed?", 1928),
        make_year("Munich Agreement", "What year was the Munich Agreement signed?", 1938),
        make_year("Molotov-Ribbentrop Pact", "What year was the Molotov-Ribbentrop Pact signed?", 1939),
        make_year("Bandung Conference", "What year was the Bandung Conference held?", 1955),
        make_year("Suez Crisis", "What year did the Suez Crisis occur?", 1956),
        make_year("Hungarian Revolution", "What year did the Hungarian Revolution against Soviet rule take place?", 1956),
        make_year("Prague Spring", "What year did the Prague Spring take place?", 1968),
        make_year("Carnation Revolution", "What year did the Carnation Revolution take place in Portugal?", 1974),
        make_year("Iranian Revolution", "What year did the Iranian Revolution take place?", 1979),
        make_year("Camp David Accords", "What year were the Camp David Accords signed?", 1978),
        make_year("Velvet Revolution", "What year did the Velvet Revolution take place?", 1989),
        make_year("Maastricht Treaty", "What year was the Maastricht Treaty signed?", 1992),
        make_year("Dayton Agreement", "What year was the Dayton Agreement signed?", 1995),
        make_year("Good Friday Agreement", "What year was the Good Friday Agreement signed?", 1998),
        make_year("Battle of Mohacs", "What year was the Battle of Mohacs fought?", 1526),
        make_year("Battle of White Mountain", "What year was the Battle of White Mountain fought?", 1620),
        make_year("Battle of Poltava", "What year was the Battle of Poltava fought?", 1709),
        make_year("Battle of Blenheim", "What year was the Battle of Blenheim fought?", 1704),
        make_year("Battle of Culloden", "What year was the Battle of Culloden fought?", 1746),
        make_year("Battle of Austerlitz", "What year was the Battle of Austerlitz fought?", 1805),
        make_year("Battle of Leipzig", "What year was the Battle of Leipzig fought?", 1813),
        make_year("Battle of Solferino", "What year was the Battle of Solferino fought?", 1859),
        make_year("Battle of Sedan", "What year was the Battle of Sedan fought?", 1870),
        make_year("Battle of Manzikert", "What year was the Battle of Manzikert fought?", 1071),
        make_year("Battle of Kosovo", "What year was the Battle of Kosovo fought?", 1389),
        make_year("Fall of Granada", "What year did Granada fall to Castile and Aragon?", 1492),
        make_year("Founding of the University of Bologna", "What year was the University of Bologna founded?", 1088),
        make_year("East-West Schism", "What year did the East-West Schism occur?", 1054),
        make_year("Treaty of Verdun", "What year was the Treaty of Verdun signed?", 843),
        make_year("Coronation of Charlemagne", "What year was Charlemagne crowned emperor?", 800),
        make_year("Peasants' Revolt in England", "What year did the Peasants' Revolt take place in England?", 1381),
        make_year("Arrival of the Black Death in Europe", "What year did the Black Death reach Europe?", 1347),
        make_year("Founding of Jamestown", "What year was Jamestown founded?", 1607),
        make_year("Arrival of the Mayflower", "What year did the Mayflower arrive at Plymouth?", 1620),
        make_year("Founding of Quebec City", "What year was Quebec City founded?", 1608),
        make_year("Treaty of Guadalupe Hidalgo", "What year was the Treaty of Guadalupe Hidalgo signed?", 1848),
        make_year("Alaska Purchase", "What year did the United States purchase Alaska?", 1867),
        make_year("Spanish-American War", "What year was the Spanish-American War fought?", 1898),
        make_year("Outbreak of the Russo-Japanese War", "What year did the Russo-Japanese War begin?", 1904),
        make_year("Easter Rising", "What year did the Easter Rising take place in Dublin?", 1916),
        make_year("Xinhai Revolution", "What year did the Xinhai Revolution take place?", 1911),
        make_year("Convention of Kanagawa", "What year was the Convention of Kanagawa signed?", 1854),
        make_year("Second Defenestration of Prague", "What year did the Second Defenestration of Prague take place?", 1618),
    };
    return pool;
}

const std::vector<RuleFact>& rule_easy_pool() {
    static const std::vector<RuleFact> pool{
        make_rule("chess", "squares on the board", 64),
        make_rule("chess", "pieces each player starts with", 16),
        make_rule("chess", "pawns each player starts with", 8),
        make_rule("chess", "knights each player starts with", 2),
        make_rule("English draughts", "pieces each player starts with", 12),
        make_rule("English draughts", "rows on the board", 8),
        make_rule("a standard deck of playing cards", "cards excluding jokers", 52),
        make_rule("a standard deck of playing cards", "suits", 4),
        make_rule("a standard deck of playing cards", "cards in each suit", 13),
        make_rule("a standard six-sided die", "faces", 6),
        make_rule("association football", "players per team on the field", 11),
        make_rule("association football", "minutes in a regulation match", 90),
        make_rule("basketball", "players per team on the court", 5),
        make_rule("basketball", "points awarded for a shot from beyond the arc", 3),
        make_rule("NBA basketball", "minutes in each quarter", 12),
        make_rule("indoor volleyball", "players per team on the court", 6),
        make_rule("indoor volleyball", "points needed to win a non-deciding set", 25),
        make_rule("baseball", "innings in a regulation game", 9),
        make_rule("baseball", "strikes for a strikeout", 3),
        make_rule("baseball", "balls for a walk", 4),
        make_rule("baseball", "fielders per team", 9),
        make_rule("American football", "points for a touchdown", 6),
        make_rule("American football", "points for a field goal", 3),
        make_rule("American football", "players per team on the field", 11),
        make_rule("tic-tac-toe", "cells on the grid", 9),
        make_rule("Monopoly", "spaces on the board", 40),
        make_rule("Monopoly", "railroad spaces", 4),
        make_rule("Scrabble", "tiles in the standard English set", 100),
        make_rule("Scrabble", "tiles on a player's rack", 7),
        make_rule("Go", "lines on each side of a standard board", 19),
        make_rule("Sudoku", "cells in the grid", 81),
        make_rule("Sudoku", "rows in the grid", 9),
        make_rule("backgammon", "checkers per player", 15),
        make_rule("backgammon", "points on the board", 24),
        make_rule("rugby union", "players per team on the field", 15),
        make_rule("rugby league", "players per team on the field", 13),
        make_rule("ice hockey", "players per team on the ice", 6),
        make_rule("ice hockey", "periods in a regulation game", 3),
        make_rule("tennis", "games needed to win a set without a tiebreak", 6),
        make_rule("golf", "holes in a standard round", 18),
        make_rule("ten-pin bowling", "pins", 10),
        make_rule("ten-pin bowling", "frames in a game", 10),
        make_rule("ten-pin bowling", "points in a perfect game", 300),
        make_rule("darts", "points to start a standard game", 501),
        make_rule("darts", "numbered sections on the board", 20),
        make_rule("snooker", "red balls", 15),
        make_rule("snooker", "points for potting the black", 7),
        make_rule("eight-ball pool", "object balls", 15),
        make_rule("cricket", "players per team", 11),
        make_rule("cricket", "legal deliveries in an over", 6),
        make_rule("Uno", "cards in the classic deck", 108),
        make_rule("a double-six domino set", "tiles", 28),
        make_rule("a Rubik's Cube", "faces", 6),
        make_rule("Connect Four", "columns", 7),
        make_rule("Connect Four", "rows", 6),
        make_rule("Yahtzee", "dice", 5),
        make_rule("Cluedo", "suspects", 6),
        make_rule("Cluedo", "rooms", 9),
        make_rule("Battleship", "squares on each grid", 100),
        make_rule("team handball", "players per team on the court", 7),
        make_rule("water polo", "players per team in the water", 7),
        make_rule("netball", "players per team on the court", 7),
        make_rule("Australian rules football", "players per team on the field", 18),
        make_rule("field hockey", "players per team on the field", 11),
        make_rule("professional championship boxing", "rounds in a title fight", 12),
        make_rule("badminton", "points needed to win a game", 21),
        make_rule("table tennis", "points needed to win a game", 11),
        make_rule("curling", "stones each team throws per end", 8),
        make_rule("polo", "players per team", 4),
        make_rule("men's field lacrosse", "players per team on the field", 10),
        make_rule("tennis", "points needed to win a standard tiebreak", 7),
        make_rule("chess", "kings each player starts with", 1),
    };
    return pool;
}

const std::vector<RuleFact>& rule_medium_pool() {
    static const std::vector<RuleFact> pool{
        make_rule("Mahjong", "tiles in a set including flowers and seasons", 144),
        make_rule("shogi", "squares on the board", 81),
        make_rule("shogi", "pieces each player starts with", 20),
        make_rule("xiangqi", "pieces each player starts with", 16),
        make_rule("xiangqi", "points on the board", 90),
        make_rule("Go", "intersections on a standard board", 361),
        make_rule("Chinese checkers", "marbles per player", 10),
        make_rule("Chinese checkers", "holes on the board", 121),
        make_rule("Kalah", "pits per player excluding the store", 6),
        make_rule("Ludo", "tokens per player", 4),
        make_rule("Risk", "territories", 42),
        make_rule("Risk", "continents", 6),
        make_rule("Catan", "terrain hexes in the base game", 19),
        make_rule("Catan", "victory points needed to win", 10),
        make_rule("Catan", "resource types", 5),
        make_rule("Scrabble", "blank tiles in the English set", 2),
        make_rule("Scrabble", "points for the letter Q", 10),
        make_rule("Scrabble", "bonus points for using all seven tiles", 50),
        make_rule("pinochle", "cards in the deck", 48),
        make_rule("euchre", "cards in the deck", 24),
        make_rule("French tarot", "cards in the deck", 78),
        make_rule("skat", "cards in the deck", 32),
        make_rule("canasta", "cards in the combined deck", 108),
        make_rule("cribbage", "points needed to win a standard game", 121),
        make_rule("backgammon", "highest value on the doubling cube", 64),
        make_rule("a double-nine domino set", "tiles", 55),
        make_rule("a double-twelve domino set", "tiles", 91),
        make_rule("a Rubik's Cube", "stickers", 54),
        make_rule("a Rubik's Cube", "edge pieces", 12),
        make_rule("a Rubik's Cube", "corner pieces", 8),
        make_rule("Stratego", "pieces per player", 40),
        make_rule("Stratego", "bombs per player", 6),
        make_rule("Othello", "discs on the board at the start", 4),
        make_rule("classic Boggle", "dice", 16),
        make_rule("Yahtzee", "scoring categories", 13),
        make_rule("Yahtzee", "points for the upper section bonus", 35),
        make_rule("Monopoly", "dollars collected for passing Go", 200),
        make_rule("Monopoly", "title deed cards", 28),
        make_rule("Trivial Pursuit", "wedges needed to win", 6),
        make_rule("Cluedo", "cards in the deck", 21),
        make_rule("snooker", "points in a maximum break", 147),
        make_rule("snooker", "colour balls other than the reds", 6),
        make_rule("darts", "points for the inner bullseye", 50),
        make_rule("darts", "points for the outer bull", 25),
        make_rule("ten-pin bowling", "feet from the foul line to the head pin", 60),
        make_rule("tennis", "Grand Slam tournaments per year", 4),
        make_rule("Test cricket", "scheduled days in a match", 5),
        make_rule("cricket", "runs for a ball that clears the boundary on the full", 6),
        make_rule("rugby union", "points for a try", 5),
        make_rule("rugby league", "points for a try", 4),
        make_rule("rugby union", "points for a penalty goal", 3),
        make_rule("Australian rules football", "points for a goal", 6),
        make_rule("Gaelic football", "players per team on the field", 15),
        make_rule("hurling", "players per team on the field", 15),
        make_rule("kabaddi", "players per team on the court", 7),
        make_rule("sepak takraw", "players per team on the court", 3),
        make_rule("korfball", "players per team on the court", 8),
        make_rule("ultimate", "players per team on the field", 7),
        make_rule("bandy", "players per team on the ice", 11),
        make_rule("beach volleyball", "players per team", 2),
        make_rule("3x3 basketball", "points that end a game early", 21),
        make_rule("epee fencing", "touches needed to win a direct elimination bout", 15),
        make_rule("epee fencing", "touches needed to win a pool bout", 5),
        make_rule("table tennis", "consecutive serves per player before switching", 2),
        make_rule("badminton", "maximum points in a game", 30),
        make_rule("squash", "points needed to win a game under point-a-rally scoring", 11),
        make_rule("water polo", "minutes in each quarter", 8),
        make_rule("ice hockey", "minutes in each period", 20),
        make_rule("team handball", "minutes in each half", 30),
        make_rule("baseball", "bases on the diamond including home plate", 4),
        make_rule("petanque", "points needed to win a game", 13),
        make_rule("association croquet", "hoops on the court", 6),
        make_rule("Molkky", "points needed to win", 50),
    };
    return pool;
}

const std::vector<std::string>& hash_easy_words() {
    static const std::vector<std::string> v{
        "hello", "world",  "apple",  "banana", "orange", "python", "coffee", "music", "river", "garden",
        "window", "yellow", "purple", "silver", "rocket", "planet", "forest", "castle", "dragon", "pencil",
        "summer", "winter", "spring", "autumn", "butter", "cookie", "guitar", "island", "jungle", "kitten",
        "ladder", "mirror", "needle", "ocean",  "pepper", "puzzle", "rabbit", "saddle", "tiger",  "violin",
        "wizard", "zebra",  "bridge", "candle", "desert", "engine", "falcon", "harbor", "meadow", "thunder",
        "marble", "lantern", "anchor", "beacon", "canyon", "dolphin", "ember", "feather", "glacier", "horizon",
        "iris",  "jasmine", "kernel", "lemon",  "maple",  "nectar", "orchid", "pebble", "quartz", "raven",
        "sable", "tulip",  "velvet", "willow", "yarrow"};
    return v;
}

const std::vector<std::string>& phrase_words_a() {
    static const std::vector<std::string> v{"machine", "deep",   "open",    "quantum", "data",   "neural", "cloud",
                                            "green",   "solar",  "digital", "rapid",   "silent", "ancient", "modern",
                                            "golden",  "hidden", "bright",  "frozen",  "urban",  "wild"};
    return v;
}

const std::vector<std::string>& phrase_words_b() {
    static const std::vector<std::string> v{"learning", "network", "source",  "computing", "science", "energy",
                                            "storage",  "garden",  "harbor",  "archive",   "signal",  "engine",
                                            "river",    "market",  "library", "compass",   "canvas",  "orbit",
                                            "theory",   "pattern"};
    return v;
}

const std::vector<std::string>& cipher_easy_words() {
    static const std::vector<std::string> v{
        "SOS",  "HELLO", "CAT",  "DOG",   "SUN",   "MOON",  "STAR",  "TREE",  "FISH", "BIRD", "RAIN",  "SNOW",
        "FIRE", "WIND",  "BOOK", "DOOR",  "GAME",  "HOME",  "KING",  "LION",  "MILK", "NOTE", "PARK",  "ROSE",
        "SHIP", "TIME",  "WAVE", "YEAR",  "ZERO",  "BLUE",  "CODE",  "DATA",  "GOLD", "HILL", "IRON",  "JAZZ",
        "LAKE", "MAP",   "NEST", "OPEN",  "PLAN",  "QUIZ",  "ROAD",  "SALT",  "TEAM", "UNIT", "VOTE",  "WOLF",
        "ARMY", "BELL",  "CORN", "DUST",  "EDGE",  "FARM",  "GIFT",  "HAND",  "IDEA", "JOKE", "KITE",  "LAMP"};
    return v;
}

const std::vector<std::string>& cipher_long_words() {
    static const std::vector<std::string> v{
        "CIPHER",   "PYTHON",   "GARDEN",   "WINTER",   "BRIDGE",   "CASTLE",   "DRAGON",   "FOREST",
        "HARBOR",   "ISLAND",   "JUNGLE",   "KERNEL",   "LADDER",   "MARBLE",   "NEEDLE",   "ORANGE",
        "PLANET",   "QUARTZ",   "ROCKET",   "SILVER",   "TEMPLE",   "UNIQUE",   "VELVET",   "WIZARD",
        "YELLOW",   "ZEPHYR",   "ANCHOR",   "BEACON",   "CANYON",   "DOLPHIN",  "EMPIRE",   "FALCON",
        "GLACIER",  "HORIZON",  "INSIGHT",  "JOURNEY",  "KINGDOM",  "LANTERN",  "MACHINE",  "NETWORK",
        "ORCHARD",  "PHANTOM",  "QUANTUM",  "RAINBOW",  "SCIENCE",  "THUNDER",  "UNIFORM",  "VOLCANO",
        "WHISPER",  "MYSTERY",  "ALGORITHM", "BLUEPRINT", "CHAMPION", "DISCOVERY", "ELEPHANT", "FRONTIER",
        "GRAVITY",  "HARMONY",  "IMPERIAL", "JUSTICE",  "KEYBOARD", "LIBRARY",  "MOUNTAIN", "NOTEBOOK",
        "OBSERVER", "PASSWORD", "QUESTION", "RESEARCH", "SOFTWARE", "TREASURE", "UNIVERSE", "VICTORY"};
    return v;
}

namespace {

const std::vector<CountryFact>& all_countries() {
    static const std::vector<CountryFact> v{
        {"France", "Paris", "Euro", "French", "Europe"},
        {"Italy", "Rome", "Euro", "Italian", "Europe"},
        {"the United Kingdom", "London", "Pound sterling", "English", "Europe"},
        {"the United States", "Washington, D.C.", "United States dollar", "English", "North America"},
        {"China", "Beijing", "Renminbi", "Mandarin Chinese", "Asia"},
        {"India", "New Delhi", "Indian rupee", "Hindi", "Asia"},
        {"Egypt", "Cairo", "Egyptian pound", "Arabic", "Africa"},
        {"Australia", "Canberra", "Australian dollar", "English", "Oceania"},
        {"Brazil", "Brasilia", "Brazilian real", "Portuguese", "South America"},
        {"Peru", "Lima", "Sol", "Spanish", "South America"},
        {"Japan", "Tokyo", "Japanese yen", "Japanese", "Asia"},
        {"Russia", "Moscow", "Russian ruble", "Russian", "Europe"},
        {"Greece", "Athens", "Euro", "Greek", "Europe"},
        {"Spain", "Madrid", "Euro", "Spanish", "Europe"},
        {"Germany", "Berlin", "Euro", "German", "Europe"},
        {"Mexico", "Mexico City", "Mexican peso", "Spanish", "North America"},
        {"Cambodia", "Phnom Penh", "Cambodian riel", "Khmer", "Asia"},
        {"Jordan", "Amman", "Jordanian dinar", "Arabic", "Asia"},
        {"the Netherlands", "Amsterdam", "Euro", "Dutch", "Europe"},
        {"Chile", "Santiago", "Chilean peso", "Spanish", "South America"},
        {"Thailand", "Bangkok", "Thai baht", "Thai", "Asia"},
        {"Indonesia", "Jakarta", "Indonesian rupiah", "Indonesian", "Asia"},
        {"Argentina", "Buenos Aires", "Argentine peso", "Spanish", "South America"},
        {"Mongolia", "Ulaanbaatar", "Tugrik", "Mongolian", "Asia"},
        {"Bhutan", "Thimphu", "Ngultrum", "Dzongkha", "Asia"},
        {"Uzbekistan", "Tashkent", "Uzbekistani som", "Uzbek", "Asia"},
        {"Laos", "Vientiane", "Lao kip", "Lao", "Asia"},
        {"Myanmar", "Naypyidaw", "Kyat", "Burmese", "Asia"},
        {"Ethiopia", "Addis Ababa", "Ethiopian birr", "Amharic", "Africa"},
        {"Madagascar", "Antananarivo", "Malagasy ariary", "Malagasy", "Africa"},
        {"Tanzania", "Dodoma", "Tanzanian shilling", "Swahili", "Africa"},
        {"Morocco", "Rabat", "Moroccan dirham", "Arabic", "Africa"},
        {"Tunisia", "Tunis", "Tunisian dinar", "Arabic", "Africa"},
        {"Paraguay", "Asuncion", "Paraguayan guarani", "Spanish", "South America"},
        {"Guatemala", "Guatemala City", "Quetzal", "Spanish", "North America"},
        {"Iceland", "Reykjavik", "Icelandic krona", "Icelandic", "Europe"},
        {"Hungary", "Budapest", "Hungarian forint", "Hungarian", "Europe"},
        {"the Czech Republic", "Prague", "Czech koruna", "Czech", "Europe"},
        {"Poland", "Warsaw", "Polish zloty", "Polish", "Europe"},
        {"Romania", "Bucharest", "Romanian leu", "Romanian", "Europe"},
        {"Croatia", "Zagreb", "Euro", "Croatian", "Europe"},
        {"Slovenia", "Ljubljana", "Euro", "Slovene", "Europe"},
        {"Nepal", "Kathmandu", "Nepalese rupee", "Nepali", "Asia"},
        {"Oman", "Muscat", "Omani rial", "Arabic", "Asia"},
        {"Vietnam", "Hanoi", "Vietnamese dong", "Vietnamese", "Asia"},
        {"Kyrgyzstan", "Bishkek", "Kyrgyzstani som", "Kyrgyz", "Asia"},
        {"Kazakhstan", "Astana", "Kazakhstani tenge", "Kazakh", "Asia"},
        {"Namibia", "Windhoek", "Namibian dollar", "English", "Africa"},
        {"Botswana", "Gaborone", "Botswana pula", "English", "Africa"},
    };
    return v;
}

std::vector<CountryFact> countries_of(const std::vector<ChainSeed>& seeds) {
    std::vector<CountryFact> out;
    for (const auto& s : seeds) {
        bool seen = false;
        for (const auto& c : out) seen = seen || c.country == s.country;
        if (seen) continue;
        bool found = false;
        for (const auto& c : all_countries()) {
            if (c.country == s.country) {
                out.push_back(c);
                found = true;
            }
        }
        if (!found) throw std::logic_error("no country facts for " + s.country);
    }
    return out;
}

}  // namespace

const std::vector<ChainSeed>& landmarks_well_known() {
    static const std::vector<ChainSeed> v{
        {"the Eiffel Tower", "France"},
        {"the Louvre", "France"},
        {"the Colosseum", "Italy"},
        {"the Leaning Tower of Pisa", "Italy"},
        {"Big Ben", "the United Kingdom"},
        {"Stonehenge", "the United Kingdom"},
        {"the Statue of Liberty", "the United States"},
        {"the Golden Gate Bridge", "the United States"},
        {"the Great Wall", "China"},
        {"the Forbidden City", "China"},
        {"the Taj Mahal", "India"},
        {"the Great Pyramid of Giza", "Egypt"},
        {"the Sydney Opera House", "Australia"},
        {"Christ the Redeemer", "Brazil"},
        {"Machu Picchu", "Peru"},
        {"Mount Fuji", "Japan"},
        {"the Kremlin", "Russia"},
        {"the Parthenon", "Greece"},
        {"the Sagrada Familia", "Spain"},
        {"the Alhambra", "Spain"},
        {"the Brandenburg Gate", "Germany"},
        {"Neuschwanstein Castle", "Germany"},
        {"Chichen Itza", "Mexico"},
        {"Angkor Wat", "Cambodia"},
        {"Petra", "Jordan"},
        {"the Rijksmuseum", "the Netherlands"},
        {"the moai of Easter Island", "Chile"},
        {"the Grand Palace", "Thailand"},
        {"Borobudur", "Indonesia"},
        {"the Perito Moreno Glacier", "Argentina"},
    };
    return v;
}

const std::vector<ChainSeed>& landmarks_less_known() {
    static const std::vector<ChainSeed> v{
        {"Gandan Monastery", "Mongolia"},
        {"Erdene Zuu Monastery", "Mongolia"},
        {"Paro Taktsang", "Bhutan"},
        {"the Registan", "Uzbekistan"},
        {"Pha That Luang", "Laos"},
        {"the Shwedagon Pagoda", "Myanmar"},
        {"the temples of Bagan", "Myanmar"},
        {"the rock-hewn churches of Lalibela", "Ethiopia"},
        {"Fasil Ghebbi", "Ethiopia"},
        {"the Avenue of the Baobabs", "Madagascar"},
        {"Mount Kilimanjaro", "Tanzania"},
        {"the Hassan II Mosque", "Morocco"},
        {"the Amphitheatre of El Jem", "Tunisia"},
        {"the Jesuit Mission of Trinidad", "Paraguay"},
        {"Tikal", "Guatemala"},
        {"Hallgrimskirkja", "Iceland"},
        {"the Hungarian Parliament Building", "Hungary"},
        {"the Charles Bridge", "the Czech Republic"},
        {"Wawel Castle", "Poland"},
        {"Bran Castle", "Romania"},
        {"the Plitvice Lakes", "Croatia"},
        {"Lake Bled", "Slovenia"},
        {"the Boudhanath Stupa", "Nepal"},
        {"the Sultan Qaboos Grand Mosque", "Oman"},
        {"Ha Long Bay", "Vietnam"},
        {"the Burana Tower", "Kyrgyzstan"},
        {"the Baiterek Tower", "Kazakhstan"},
        {"Sossusvlei", "Namibia"},
        {"the Okavango Delta", "Botswana"},
    };
    return v;
}

const std::vector<CountryFact>& countries_well_known() {
    static const std::vector<CountryFact> v = countries_of(landmarks_well_known());
    return v;
}

const std::vector<CountryFact>& countries_less_known() {
    static const std::vector<CountryFact> v = countries_of(landmarks_less_known());
    return v;
}

}  // namespace when2tool::envs
