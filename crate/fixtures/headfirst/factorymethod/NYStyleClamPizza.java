package headfirst.factorymethod;

public class NYStyleClamPizza extends Pizza {
    public NYStyleClamPizza() {
        name = "NY Style Clam Pizza";
        toppings.add("Grated Reggiano Cheese");
    }
}
