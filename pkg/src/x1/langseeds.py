"""Built-in seed text per language, used to build character-trigram profiles.

Scripts that are exclusive to one language in the closed set are resolved
without profiles; seeds are only needed where several languages share a
script (Latin and Cyrillic). Each entry is everyday prose rich in the
language's function words, which dominate trigram statistics.
"""

SEED_TEXTS: dict[str, str] = {
    # --- Latin script ---------------------------------------------------
    "English": (
        "Good morning, how are you doing today? I am learning this language "
        "because it is very interesting and useful for my work. We will go to "
        "the market tomorrow morning to buy some vegetables and fresh fruit. "
        "The children are playing outside in front of the house with their "
        "friends. Thank you very much for all of your help yesterday evening. "
        "The answer to this question is quite simple when you think about it."
    ),
    "German": (
        "Guten Morgen, wie geht es dir heute? Ich lerne diese Sprache, weil "
        "sie sehr interessant und nützlich für meine Arbeit ist. Wir gehen "
        "morgen früh auf den Markt, um Gemüse und frisches Obst zu kaufen. "
        "Die Kinder spielen draußen vor dem Haus mit ihren Freunden. Vielen "
        "Dank für deine ganze Hilfe gestern Abend. Die Antwort auf diese "
        "Frage ist eigentlich ziemlich einfach, wenn man darüber nachdenkt."
    ),
    "Dutch": (
        "Goedemorgen, hoe gaat het vandaag met je? Ik leer deze taal omdat ze "
        "erg interessant en nuttig is voor mijn werk. We gaan morgenochtend "
        "naar de markt om groente en vers fruit te kopen. De kinderen spelen "
        "buiten voor het huis met hun vrienden. Hartelijk bedankt voor al je "
        "hulp gisteravond. Het antwoord op deze vraag is eigenlijk heel "
        "eenvoudig als je erover nadenkt."
    ),
    "Spanish": (
        "Buenos días, ¿cómo estás hoy? Estoy aprendiendo este idioma porque "
        "es muy interesante y útil para mi trabajo. Mañana por la mañana "
        "iremos al mercado para comprar verduras y fruta fresca. Los niños "
        "están jugando afuera, delante de la casa, con sus amigos. Muchas "
        "gracias por toda tu ayuda de ayer por la noche. La respuesta a esta "
        "pregunta es bastante sencilla cuando lo piensas un poco."
    ),
    "Portuguese": (
        "Bom dia, como você está hoje? Estou aprendendo este idioma porque é "
        "muito interessante e útil para o meu trabalho. Amanhã de manhã vamos "
        "ao mercado para comprar legumes e fruta fresca. As crianças estão "
        "brincando lá fora, em frente da casa, com os seus amigos. Muito "
        "obrigado por toda a sua ajuda de ontem à noite. A resposta para esta "
        "pergunta é bastante simples quando você pensa nisso."
    ),
    "French": (
        "Bonjour, comment vas-tu aujourd'hui ? J'apprends cette langue parce "
        "qu'elle est très intéressante et utile pour mon travail. Demain "
        "matin, nous irons au marché pour acheter des légumes et des fruits "
        "frais. Les enfants jouent dehors devant la maison avec leurs amis. "
        "Merci beaucoup pour toute ton aide d'hier soir. La réponse à cette "
        "question est assez simple quand on y réfléchit un peu."
    ),
    "Italian": (
        "Buongiorno, come stai oggi? Sto imparando questa lingua perché è "
        "molto interessante e utile per il mio lavoro. Domani mattina andremo "
        "al mercato per comprare della verdura e della frutta fresca. I "
        "bambini stanno giocando fuori davanti alla casa con i loro amici. "
        "Grazie mille per tutto il tuo aiuto di ieri sera. La risposta a "
        "questa domanda è piuttosto semplice se ci pensi un attimo."
    ),
    "Romanian": (
        "Bună dimineața, ce mai faci astăzi? Învăț această limbă pentru că "
        "este foarte interesantă și utilă pentru munca mea. Mâine dimineață "
        "vom merge la piață să cumpărăm legume și fructe proaspete. Copiii se "
        "joacă afară, în fața casei, cu prietenii lor. Mulțumesc mult pentru "
        "tot ajutorul tău de aseară. Răspunsul la această întrebare este "
        "destul de simplu dacă te gândești puțin."
    ),
    "Polish": (
        "Dzień dobry, jak się dzisiaj czujesz? Uczę się tego języka, ponieważ "
        "jest bardzo ciekawy i przydatny w mojej pracy. Jutro rano pójdziemy "
        "na targ, żeby kupić warzywa i świeże owoce. Dzieci bawią się na "
        "zewnątrz przed domem ze swoimi przyjaciółmi. Dziękuję bardzo za całą "
        "twoją wczorajszą pomoc. Odpowiedź na to pytanie jest całkiem prosta, "
        "jeśli się nad nią chwilę zastanowić."
    ),
    "Finnish": (
        "Hyvää huomenta, mitä sinulle kuuluu tänään? Opiskelen tätä kieltä, "
        "koska se on todella mielenkiintoinen ja hyödyllinen työssäni. "
        "Menemme huomenna aamulla torille ostamaan vihanneksia ja tuoreita "
        "hedelmiä. Lapset leikkivät ulkona talon edessä ystäviensä kanssa. "
        "Kiitos paljon kaikesta avustasi eilen illalla. Vastaus tähän "
        "kysymykseen on melko yksinkertainen, kun sitä vähän miettii."
    ),
    "Hungarian": (
        "Jó reggelt, hogy vagy ma? Azért tanulom ezt a nyelvet, mert nagyon "
        "érdekes és hasznos a munkámhoz. Holnap reggel elmegyünk a piacra "
        "zöldséget és friss gyümölcsöt venni. A gyerekek kint játszanak a ház "
        "előtt a barátaikkal. Köszönöm szépen a tegnap esti segítségedet. A "
        "válasz erre a kérdésre egészen egyszerű, ha egy kicsit belegondolsz."
    ),
    "Swedish": (
        "God morgon, hur mår du idag? Jag lär mig det här språket eftersom "
        "det är mycket intressant och användbart i mitt arbete. Vi ska gå "
        "till marknaden imorgon bitti för att köpa grönsaker och färsk frukt. "
        "Barnen leker utanför framför huset med sina vänner. Tack så mycket "
        "för all din hjälp igår kväll. Svaret på den här frågan är ganska "
        "enkelt när man tänker efter lite. Hon sade att hon hellre skulle "
        "stanna hemma eftersom vädret blir sämre i eftermiddag. Han heter "
        "Björn, och han åker alltid till jobbet fastän det bara tar ett "
        "ögonblick att gå dit. Sådant händer ju då och då, eller hur? Vi "
        "brukar äta lunch klockan tolv och dricka kaffe efteråt."
    ),
    "Danish": (
        "Godmorgen, hvordan har du det i dag? Jeg lærer dette sprog, fordi "
        "det er meget interessant og nyttigt for mit arbejde. Vi skal på "
        "markedet i morgen tidlig for at købe grøntsager og frisk frugt. "
        "Børnene leger udenfor foran huset sammen med deres venner. Mange tak "
        "for al din hjælp i går aftes. Svaret på dette spørgsmål er ret "
        "enkelt, når man tænker lidt over det. Hun sagde, at hun hellere "
        "ville blive hjemme, fordi vejret bliver dårligt i eftermiddag. Han "
        "hedder Søren, og han kører altid på arbejde, selvom det kun tager et "
        "øjeblik at gå derhen. Sådan noget sker jo engang imellem, ikke "
        "sandt? Vi plejer at spise frokost klokken tolv."
    ),
    "Norwegian": (
        "God morgen, hvordan har du det i dag? Jeg lærer dette språket fordi "
        "det er veldig interessant og nyttig for arbeidet mitt. Vi skal på "
        "markedet i morgen tidlig for å kjøpe grønnsaker og fersk frukt. "
        "Barna leker utenfor foran huset sammen med vennene sine. Tusen takk "
        "for all hjelpen din i går kveld. Svaret på dette spørsmålet er "
        "ganske enkelt når man tenker litt over det. Hun sa at hun heller "
        "ville bli hjemme fordi været blir dårlig i ettermiddag. Han heter "
        "Øyvind, og han kjører alltid til jobben, selv om det bare tar et "
        "øyeblikk å gå dit. Slikt skjer jo av og til, ikke sant? Vi pleier å "
        "spise lunsj klokka tolv."
    ),
    "Indonesian": (
        "Selamat pagi, apa kabar kamu hari ini? Saya sedang belajar bahasa "
        "ini karena sangat menarik dan berguna untuk pekerjaan saya. Besok "
        "pagi kami akan pergi ke pasar untuk membeli sayuran dan buah segar. "
        "Anak-anak sedang bermain bola di luar rumah bersama teman-teman "
        "mereka. Terima kasih banyak atas semua bantuan Anda kemarin malam. "
        "Jawaban dari pertanyaan ini sebenarnya cukup sederhana kalau "
        "dipikirkan sebentar. Dia tidak bisa tidur karena terlalu banyak "
        "minum kopi. Apakah Anda bisa menjelaskan masalah ini sekali lagi? "
        "Perusahaan itu sudah berdiri sejak tahun delapan puluhan. Kenapa "
        "jawaban ini berbeda dengan yang kemarin? Semua orang harus bekerja "
        "sama supaya proyek ini cepat selesai."
    ),
    "Malay": (
        "Selamat pagi, apa khabar awak hari ini? Saya sedang belajar bahasa "
        "ini kerana ia sangat menarik dan berguna untuk kerja saya. Esok pagi "
        "kami akan pergi ke pasar raya untuk membeli sayur dan buah segar. "
        "Budak-budak sedang bermain bola di luar rumah bersama kawan-kawan "
        "mereka. Terima kasih banyak atas segala pertolongan awak semalam. "
        "Jawapan bagi soalan ini sebenarnya agak mudah kalau difikirkan "
        "sekejap. Dia tak boleh tidur kerana terlalu banyak minum kopi "
        "petang tadi. Bolehkah encik menerangkan masalah ini sekali lagi? "
        "Syarikat itu telah ditubuhkan sejak tahun lapan puluhan. Macam mana "
        "jawapan ini berbeza daripada yang semalam? Semua orang mesti "
        "bekerjasama supaya projek ini cepat siap."
    ),
    "Tagalog": (
        "Magandang umaga po, kumusta ka ngayong araw? Nag-aaral ako ng wikang "
        "ito dahil napakainteresante nito at kapaki-pakinabang sa aking "
        "trabaho. Bukas ng umaga pupunta kami sa palengke upang bumili ng "
        "gulay at sariwang prutas. Ang mga bata ay naglalaro sa labas ng "
        "bahay kasama ang kanilang mga kaibigan. Maraming salamat sa lahat ng "
        "iyong tulong kagabi. Ang sagot sa tanong na ito ay medyo simple "
        "lamang kapag pinag-isipan mo."
    ),
    "Swahili": (
        "Habari ya asubuhi, hujambo leo? Ninajifunza lugha hii kwa sababu "
        "inavutia sana na ni muhimu kwa kazi yangu. Kesho asubuhi tutakwenda "
        "sokoni kununua mboga na matunda mapya. Watoto wanacheza mpira nje ya "
        "nyumba pamoja na marafiki zao. Asante sana kwa msaada wako wote wa "
        "jana jioni. Jibu la swali hili ni rahisi kabisa ukifikiria kidogo."
    ),
    "Turkish": (
        "Günaydın, bugün nasılsın? Bu dili öğreniyorum çünkü çok ilginç ve "
        "işim için faydalı. Yarın sabah pazara gidip sebze ve taze meyve "
        "alacağız. Çocuklar evin önünde dışarıda arkadaşlarıyla oynuyorlar. "
        "Dün akşamki tüm yardımın için çok teşekkür ederim. Bu sorunun cevabı "
        "biraz düşününce aslında oldukça basit."
    ),
    "Vietnamese": (
        "Chào buổi sáng, hôm nay bạn có khỏe không? Tôi đang học ngôn ngữ này "
        "vì nó rất thú vị và hữu ích cho công việc của tôi. Sáng mai chúng "
        "tôi sẽ đi chợ để mua rau và trái cây tươi. Bọn trẻ đang chơi bóng ở "
        "ngoài sân trước nhà cùng với bạn bè của chúng. Cảm ơn bạn rất nhiều "
        "vì đã giúp đỡ tôi tối hôm qua. Câu trả lời cho câu hỏi này khá đơn "
        "giản nếu bạn suy nghĩ một chút."
    ),
    "Irish": (
        "Maidin mhaith, conas atá tú inniu? Táim ag foghlaim na teanga seo "
        "mar tá sí an-suimiúil agus úsáideach do mo chuid oibre. Rachaimid go "
        "dtí an margadh maidin amárach chun glasraí agus torthaí úra a "
        "cheannach. Tá na páistí ag súgradh taobh amuigh os comhair an tí "
        "lena gcairde. Go raibh míle maith agat as do chabhair go léir aréir. "
        "Tá freagra na ceiste seo simplí go leor nuair a smaoiníonn tú air. "
        "Ba mhaith liom císte agus cupán caife, más é do thoil é. Níl a fhios "
        "agam cá bhfuil mo chuid eochracha. An féidir liom do ghuthán a "
        "úsáid ar feadh nóiméid? Bhíomar ag siúl san fhoraois tráthnóna ar "
        "fad inné."
    ),
    "Scottish Gaelic": (
        "Madainn mhath, ciamar a tha thu an-diugh? Tha mi ag ionnsachadh a' "
        "chànain seo oir tha e glè inntinneach agus feumail airson mo chuid "
        "obrach. Thèid sinn dhan mhargaidh madainn a-màireach gus glasraichean "
        "agus measan ùra a cheannach. Tha a' chlann a' cluich a-muigh air "
        "beulaibh an taighe còmhla rin caraidean. Mòran taing airson do "
        "chuideachaidh gu lèir an-raoir. Tha freagairt na ceiste seo gu math "
        "sìmplidh nuair a smaoinicheas tu air. Bu toil leam cèic agus cupa "
        "cofaidh, mas e do thoil e. Chan eil fhios agam càite a bheil an "
        "iuchair agam. Am faod mi am fòn agad a chleachdadh airson mionaid? "
        "Bha sinn a' coiseachd anns a' choille fad an fheasgair an-dè."
    ),
    "Maori": (
        "Mōrena, kei te pēhea koe i tēnei rā? Kei te ako ahau i tēnei reo nā "
        "te mea he tino whakamere, he whai hua hoki mō taku mahi. Āpōpō ka "
        "haere mātou ki te mākete ki te hoko huawhenua me ngā hua rākau hou. "
        "Kei te tākaro ngā tamariki i waho i mua i te whare me ō rātou hoa. "
        "Ka nui te mihi ki a koe mō āu āwhina katoa inapō. He māmā noa te "
        "whakautu ki tēnei pātai ina whakaarohia e koe."
    ),
    # --- Cyrillic script ------------------------------------------------
    "Russian": (
        "Доброе утро, как у тебя сегодня дела? Я изучаю этот язык, потому "
        "что он очень интересный и полезный для моей работы. Завтра утром мы "
        "пойдём на рынок, чтобы купить овощи и свежие фрукты. Дети играют на "
        "улице перед домом со своими друзьями. Большое спасибо за всю твою "
        "вчерашнюю помощь. Ответ на этот вопрос довольно простой, если "
        "немного подумать. По утрам я пью кофе и читаю газету на балконе. "
        "Брат моего друга живёт в маленькой деревне возле гор. В субботу "
        "вечером мы пойдём в кино, если будет время. Кошка спит на столе в "
        "кухне, а собака лежит у двери."
    ),
    "Bulgarian": (
        "Добро утро, как си днес? Уча този език, защото е много интересен и "
        "полезен за работата ми. Утре сутринта ще отидем на пазара, за да "
        "купим зеленчуци и пресни плодове. Децата играят навън пред къщата "
        "със своите приятели. Много благодаря за цялата ти помощ снощи. "
        "Отговорът на този въпрос е доста прост, ако се замислиш малко. "
        "Сутрин пия кафе и чета вестника на балкона. Братът на моя приятел "
        "живее в малко село близо до планината. В събота вечер ще отидем на "
        "кино, ако имаме време. Котката спи върху масата в кухнята, а "
        "кучето лежи до вратата. Пътят към върха е дълъг и труден, но "
        "гледката е прекрасна. Той е учител, а жена му работи като лекарка "
        "в градската болница. Мъжът седна до прозореца и започна да чете "
        "вестник. Това е първият ми работен ден в центъра на града."
    ),
    "Ukrainian": (
        "Доброго ранку, як у тебе сьогодні справи? Я вивчаю цю мову, тому що "
        "вона дуже цікава та корисна для моєї роботи. Завтра вранці ми "
        "підемо на ринок, щоб купити овочі та свіжі фрукти. Діти граються на "
        "вулиці перед будинком зі своїми друзями. Щиро дякую за всю твою "
        "вчорашню допомогу. Відповідь на це питання досить проста, якщо "
        "трохи подумати. Вранці я п'ю каву та читаю газету на балконі. Брат "
        "мого друга живе в маленькому селі біля гір. У суботу ввечері ми "
        "підемо в кіно, якщо матимемо час. Кіт спить на столі в кухні, а "
        "пес лежить біля дверей."
    ),
}
